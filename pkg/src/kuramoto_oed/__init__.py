"""Uncertainty quantification and sequential experiment selection for robust
synchronization control of Kuramoto oscillator networks."""

from .dynamics import (CouplingMatrix, IntegrationResult, NonFiniteStateError,
                       OscillatorEnsemble, SimConfig, integrate_rk4,
                       is_frequency_synchronized, phase_derivatives,
                       trailing_frequency_spread)
from .mocu import (BisectionConfig, BracketExpansionError, MocuEstimate, PairScore,
                   estimate_mocu, expected_remaining_mocu, remaining_mocu_table,
                   robust_xi, sample_xis, select_optimal_pair, xi)
from .oed import (STRATEGIES, DesignTrace, MocuParams, SetupSynchronizedError,
                  TraceStep, build_benchmark_setup, choose_experiment, comb2,
                  min_attainable_mocu, run_episode)
from .seeding import make_rng, subseed
from .uncertainty import (ExperimentOutcome, InconsistentOutcomeError,
                          UncertaintyClass, clamped_threshold, interval_widths,
                          outcome_probabilities, pair_threshold, sample_prior,
                          simulate_pair_outcome, update_bounds, virtual_experiment)

__version__ = "0.1.0"

__all__ = [
    "BisectionConfig", "BracketExpansionError", "CouplingMatrix", "DesignTrace",
    "ExperimentOutcome", "InconsistentOutcomeError", "IntegrationResult",
    "MocuEstimate", "MocuParams", "NonFiniteStateError", "OscillatorEnsemble",
    "PairScore", "STRATEGIES", "SetupSynchronizedError", "SimConfig", "TraceStep",
    "UncertaintyClass", "build_benchmark_setup", "choose_experiment",
    "clamped_threshold", "comb2", "estimate_mocu", "expected_remaining_mocu",
    "integrate_rk4", "interval_widths", "is_frequency_synchronized", "make_rng",
    "min_attainable_mocu", "outcome_probabilities", "pair_threshold",
    "phase_derivatives", "remaining_mocu_table", "robust_xi", "run_episode",
    "sample_prior", "sample_xis", "select_optimal_pair", "simulate_pair_outcome",
    "subseed", "trailing_frequency_spread", "update_bounds", "virtual_experiment",
    "xi",
]
