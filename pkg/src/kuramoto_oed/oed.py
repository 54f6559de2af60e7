"""Sequential experiment selection episodes and the benchmark setups.

An episode starts from a prior uncertainty class and a hidden ground-truth
coupling matrix drawn from it. At each step a strategy picks an unperformed
pair, the pairwise experiment's outcome is generated from the truth, the
class is tightened, and the cost of uncertainty is re-estimated. Performed
pairs are never repeated: a second experiment on the same pair cannot move
its bounds again.

Strategies:
  * ``mocu``    - smallest expected remaining cost of uncertainty;
  * ``entropy`` - widest coupling-bound interval;
  * ``random``  - uniform over the unperformed pairs (seeded).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dynamics import CouplingMatrix, OscillatorEnsemble, SimConfig, is_frequency_synchronized
from .mocu import BisectionConfig, MocuEstimate, estimate_mocu, select_optimal_pair
from .seeding import Seed, make_rng, subseed
from .uncertainty import (ExperimentOutcome, UncertaintyClass, interval_widths,
                          sample_prior, update_bounds, virtual_experiment)

STRATEGIES = ("mocu", "entropy", "random")


class SetupSynchronizedError(RuntimeError):
    """A constructed benchmark model synchronizes without any control."""


@dataclass(frozen=True)
class MocuParams:
    """Bundle of the Monte-Carlo estimation settings threaded through episodes."""

    sim: SimConfig = SimConfig()
    bisection: BisectionConfig = BisectionConfig()
    samples: int = 2000

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be at least 1")


@dataclass(frozen=True)
class TraceStep:
    step: int
    pair: tuple[int, int]
    outcome: ExperimentOutcome
    mocu: MocuEstimate


@dataclass(frozen=True)
class DesignTrace:
    """Record of one episode: chosen pairs, outcomes, and cost after each update."""

    strategy: str
    initial_mocu: MocuEstimate
    min_attainable_mocu: MocuEstimate
    steps: list[TraceStep] = field(default_factory=list)
    final_class: UncertaintyClass | None = None

    def mocu_curve(self) -> list[float]:
        """Cost estimates indexed by number of performed experiments."""
        return [self.initial_mocu.value] + [s.mocu.value for s in self.steps]


def choose_experiment(strategy: str, cls: UncertaintyClass, ens: OscillatorEnsemble,
                      already_performed: set[tuple[int, int]],
                      params: MocuParams = MocuParams(),
                      seed: Seed = 0) -> tuple[int, int]:
    """Pick the next pair among those not yet performed. Ties are lexicographic."""
    candidates = [p for p in cls.pairs() if p not in already_performed]
    if not candidates:
        raise ValueError("all pairwise experiments have been performed")
    if strategy == "mocu":
        pair, _ = select_optimal_pair(cls, ens, params.sim, params.bisection,
                                      params.samples, seed, pairs=candidates)
        return pair
    if strategy == "entropy":
        for pair, _width in interval_widths(cls):
            if pair not in already_performed:
                return pair
        raise AssertionError("unreachable: candidates is non-empty")
    if strategy == "random":
        rng = make_rng(seed)
        return candidates[int(rng.integers(len(candidates)))]
    raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")


def min_attainable_mocu(truth: CouplingMatrix, cls0: UncertaintyClass,
                        ens: OscillatorEnsemble, params: MocuParams = MocuParams(),
                        seed: Seed = 0) -> MocuEstimate:
    """Cost of uncertainty left after performing every pairwise experiment.

    Experiments bound the couplings but do not identify them, so this floor
    is positive in general.
    """
    cls = cls0
    for i, j in cls0.pairs():
        cls = update_bounds(cls, virtual_experiment(truth, ens, i, j), ens)
    return estimate_mocu(cls, ens, params.sim, params.bisection, params.samples, seed)


def run_episode(truth: CouplingMatrix, strategy: str, cls0: UncertaintyClass,
                ens: OscillatorEnsemble, budget: int,
                params: MocuParams = MocuParams(), seed: Seed = 0,
                initial_mocu: MocuEstimate | None = None,
                min_attainable: MocuEstimate | None = None) -> DesignTrace:
    """Run one sequential-design episode for ``budget`` experiments.

    Seeds are derived per step, so the whole trace is reproducible from
    (truth, strategy, cls0, budget, seed). Precomputed initial/min-attainable
    estimates may be injected to share them across strategies.
    """
    n_pairs = len(cls0.pairs())
    if not 0 <= budget <= n_pairs:
        raise ValueError(f"budget must lie in [0, {n_pairs}]")
    if not cls0.contains(truth):
        raise ValueError("ground truth lies outside the initial uncertainty class")
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    if initial_mocu is None:
        initial_mocu = estimate_mocu(cls0, ens, params.sim, params.bisection,
                                     params.samples, subseed(seed, 0, 0))
    if min_attainable is None:
        min_attainable = min_attainable_mocu(truth, cls0, ens, params,
                                             subseed(seed, 0, 1))
    cls = cls0
    performed: set[tuple[int, int]] = set()
    steps: list[TraceStep] = []
    for step in range(1, budget + 1):
        pair = choose_experiment(strategy, cls, ens, performed, params,
                                 subseed(seed, step, 0))
        outcome = virtual_experiment(truth, ens, *pair)
        cls = update_bounds(cls, outcome, ens)
        post = estimate_mocu(cls, ens, params.sim, params.bisection,
                             params.samples, subseed(seed, step, 1))
        performed.add(pair)
        steps.append(TraceStep(step=step, pair=pair, outcome=outcome, mocu=post))
    return DesignTrace(strategy=strategy, initial_mocu=initial_mocu,
                       min_attainable_mocu=min_attainable, steps=steps,
                       final_class=cls)


# ---------------------------------------------------------------------------
# benchmark setups

_N5_OMEGA = np.array([-2.5000, -0.6667, 1.1667, 2.0000, 5.8333])
_N9_OMEGA = np.array([1.19, 3.23, 6.34, 7.48, 10.9, 11.62, 14.74, 29.58, 38.88])

# interval half-width factors around d * |omega_i - omega_j| / 2
_N5_FACTORS = (0.85, 1.15)
_N9_FACTORS = (0.97, 1.03)

_TRUTH_ATTEMPTS = 16

# pairs whose coupling is weakened so the uncontrolled model stays
# non-synchronous (overridable via d_overrides). An oscillator drifts when
# its summed coupling stays below its gap to the mean frequency, so the
# weakened set cuts most links of one "drifter" per setup: the slowest
# oscillator for n5, the two fastest for n9. One drifter link is left at
# full strength on purpose: its interval straddles its own lock threshold,
# so experimenting on it is informative AND it directly offsets how much
# control the drifter needs - that is what gives experiment selection
# something to find. Weakening every drifter link instead would leave all
# control-relevant uncertainty irreducible and the comparison flat.
_N5_WEAK_PAIRS = {(0, 2): 0.3, (0, 3): 0.3, (0, 4): 0.3}
_N9_WEAK_PAIRS = ({(i, 8): 0.15 for i in range(7)}
                  | {(i, 7): 0.15 for i in range(7)})


def build_benchmark_setup(which: str, d_overrides: dict[tuple[int, int], float] | None = None,
                          seed: Seed = 0, sim: SimConfig = SimConfig()):
    """Construct the five- or nine-oscillator benchmark.

    Bound intervals are centered multiplicatively on d_ij times the pair
    lock threshold; the correction factors d_ij default to 1 except on a
    weakened-pair set and may be overridden entry by entry. The hidden truth
    is drawn from the resulting prior and must be non-synchronous without
    control; synchronous draws are rejected and redrawn (deterministically,
    from seeds derived per attempt), and ``SetupSynchronizedError`` is
    raised if every attempt synchronizes.

    Returns (ensemble, prior class, truth).
    """
    if which == "n5":
        omega, (f_lo, f_hi), d = _N5_OMEGA, _N5_FACTORS, dict(_N5_WEAK_PAIRS)
        omega_control = float(np.mean(omega))
    elif which == "n9":
        omega, (f_lo, f_hi), d = _N9_OMEGA, _N9_FACTORS, dict(_N9_WEAK_PAIRS)
        omega_control = float(np.mean(omega)) / 2.0
    else:
        raise ValueError(f"unknown benchmark setup {which!r}; expected 'n5' or 'n9'")
    if d_overrides:
        for (i, j), val in d_overrides.items():
            if not (0 <= i < j < omega.size):
                raise ValueError(f"d override names invalid pair ({i}, {j})")
            if not (val > 0):
                raise ValueError("d factors must be positive")
            d[(i, j)] = float(val)
    ens = OscillatorEnsemble(omega=omega, omega_control=omega_control)
    n = omega.size
    lower = np.zeros((n, n))
    upper = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            center = d.get((i, j), 1.0) * abs(omega[i] - omega[j]) / 2.0
            lower[i, j] = lower[j, i] = f_lo * center
            upper[i, j] = upper[j, i] = f_hi * center
    cls0 = UncertaintyClass(lower=lower, upper=upper)
    for attempt in range(_TRUTH_ATTEMPTS):
        truth = sample_prior(cls0, subseed(seed, 0, attempt))
        if not is_frequency_synchronized(ens, truth, None, sim):
            return ens, cls0, truth
    raise SetupSynchronizedError(
        f"all {_TRUTH_ATTEMPTS} sampled {which} truths synchronize without "
        "control; weaken more pairs via d_overrides")


def comb2(n: int) -> int:
    """Number of unordered pairs among n oscillators."""
    return math.comb(n, 2)
