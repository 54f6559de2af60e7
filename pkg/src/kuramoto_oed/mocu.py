"""Objective cost of coupling uncertainty for the synchronization task.

For a known coupling matrix the cheapest control is the smallest control
strength that frequency-locks the system; under interval uncertainty a
robust controller must budget for the worst coupling in the class. The mean
objective cost of uncertainty is the expected overshoot

    value = E_a[ xi_star - xi(a) ],    xi_star = max_a xi(a),

estimated by Monte Carlo over the prior: the sample maximum stands in for
the class-wide maximum (a downward-biased estimate of the true supremum),
and the expectation is the sample mean over the same draws.

Ranking candidate experiments uses the expected remaining cost after the
experiment: both possible outcomes condition the class, and their costs are
weighted by the outcome probabilities. By default the conditional costs are
computed by partitioning the already-evaluated sample set on the pair's lock
threshold (the partition is distributed exactly as the conditioned uniform
prior), so the expensive per-sample control searches are shared across all
candidate pairs; an independent fresh-sampling mode exists for validation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .dynamics import (RECIPROCAL, CouplingMatrix, OscillatorEnsemble, SimConfig,
                       criterion_size)
from .seeding import Seed, subseed
from .uncertainty import (ExperimentOutcome, UncertaintyClass, clamped_threshold,
                          outcome_probabilities, sample_prior, update_bounds)


class BracketExpansionError(RuntimeError):
    """Control-strength bracket expansion failed to reach synchronization."""


@dataclass(frozen=True)
class BisectionConfig:
    """Bracketing-then-bisection settings for the minimal control search."""

    tol: float = 1e-3
    bracket_growth: float = 2.0
    max_doublings: int = 20

    def __post_init__(self):
        if not (self.tol > 0):
            raise ValueError("tol must be positive")
        if not (self.bracket_growth > 1):
            raise ValueError("bracket_growth must exceed 1")
        if self.max_doublings < 0:
            raise ValueError("max_doublings must be non-negative")


@dataclass(frozen=True)
class MocuEstimate:
    """Monte-Carlo cost-of-uncertainty estimate."""

    value: float
    stderr: float
    samples: int
    xi_star: float

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        if self.value < 0 or self.stderr < 0:
            raise ValueError("value and stderr must be non-negative")


@dataclass(frozen=True)
class PairScore:
    """Expected remaining cost of one candidate experiment, with diagnostics."""

    pair: tuple[int, int]
    remaining: float
    stderr: float
    p_sync: float
    threshold: float


def _spreads(ens: OscillatorEnsemble, a_batch: np.ndarray, control: np.ndarray,
             cfg: SimConfig) -> np.ndarray:
    omega_ext, a_ext = _kernels.controlled_batch(
        ens.omega, ens.omega_control, a_batch, control,
        reciprocal=ens.control_mode == RECIPROCAL)
    return _kernels.trailing_spreads(
        omega_ext, a_ext, criterion_size(ens, True),
        cfg.nsteps, cfg.dt, cfg.sync_window)


def _xi_batch(a_batch: np.ndarray, ens: OscillatorEnsemble,
              cfg: SimConfig, bis: BisectionConfig) -> np.ndarray:
    """Minimal synchronizing control strength for every coupling sample.

    Lockstep bracketing-then-bisection: one batched integration per bracket
    or bisection step, restricted to the samples still undecided. Returns
    the upper bracket end, i.e. a strength known to synchronize, within
    ``bis.tol`` of the infimum.
    """
    nb = a_batch.shape[0]
    xi = np.zeros(nb)
    if nb == 0:
        return xi
    synced0 = _spreads(ens, a_batch, np.zeros(nb), cfg) < cfg.sync_tol
    active = np.flatnonzero(~synced0)
    if active.size == 0:
        return xi

    k0 = float(np.max(np.abs(ens.omega - ens.omega_control)))
    if k0 == 0.0:
        k0 = bis.tol
    lo = np.zeros(active.size)
    hi = np.full(active.size, k0)

    # expand brackets until every active sample synchronizes at its hi
    pending = np.arange(active.size)
    for _ in range(bis.max_doublings + 1):
        spr = _spreads(ens, a_batch[active[pending]], hi[pending], cfg)
        unsynced = spr >= cfg.sync_tol
        if not np.any(unsynced):
            break
        pending = pending[unsynced]
        lo[pending] = hi[pending]
        hi[pending] *= bis.bracket_growth
    else:
        bad = active[pending]
        raise BracketExpansionError(
            f"no synchronization up to control strength {lo[pending].max():g} "
            f"after {bis.max_doublings} doublings (sample indices {bad[:8].tolist()})")

    while True:
        open_ = np.flatnonzero(hi - lo > bis.tol)
        if open_.size == 0:
            break
        mid = 0.5 * (lo[open_] + hi[open_])
        spr = _spreads(ens, a_batch[active[open_]], mid, cfg)
        synced = spr < cfg.sync_tol
        hi[open_[synced]] = mid[synced]
        lo[open_[~synced]] = mid[~synced]

    xi[active] = hi
    return xi


def xi(a: CouplingMatrix, ens: OscillatorEnsemble, cfg: SimConfig = SimConfig(),
       bis: BisectionConfig = BisectionConfig()) -> float:
    """Smallest control strength (within tol) that synchronizes the model.

    Returns 0 when the model synchronizes with the control detached (checked
    as zero control strength, which is equivalent). The initial upper
    bracket is the largest gap between a system frequency and the control
    frequency, grown geometrically if needed.
    """
    if a.n != ens.n:
        raise ValueError("coupling matrix size does not match the ensemble")
    return float(_xi_batch(a.a[None, :, :], ens, cfg, bis)[0])


def robust_xi(xis: np.ndarray) -> float:
    """Worst-case (maximum) control strength over a sample of models."""
    xis = np.asarray(xis, dtype=float)
    if xis.size == 0:
        raise ValueError("robust_xi needs at least one sample")
    return float(xis.max())


def sample_xis(cls: UncertaintyClass, ens: OscillatorEnsemble, cfg: SimConfig,
               bis: BisectionConfig, samples: int, seed: Seed):
    """Draw ``samples`` couplings from the prior and compute each one's
    minimal control strength.

    Sample s is drawn with the seed derived from (seed, s), so the batch is
    reproducible independently of evaluation order. Returns (a_batch, xis).
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    if cls.n != ens.n:
        raise ValueError("uncertainty class size does not match the ensemble")
    a_batch = np.stack([sample_prior(cls, subseed(seed, s)).a for s in range(samples)])
    return a_batch, _xi_batch(a_batch, ens, cfg, bis)


def _estimate_from_xis(xis: np.ndarray) -> MocuEstimate:
    # mean of (max - xi_s), not max minus mean: keeps the degenerate class
    # at exactly 0.0 and every term non-negative
    xi_star = float(xis.max())
    gaps = xi_star - xis
    value = float(gaps.mean())
    stderr = float(gaps.std(ddof=1) / np.sqrt(gaps.size)) if gaps.size > 1 else 0.0
    return MocuEstimate(value=value, stderr=stderr, samples=int(gaps.size), xi_star=xi_star)


def estimate_mocu(cls: UncertaintyClass, ens: OscillatorEnsemble,
                  cfg: SimConfig = SimConfig(), bis: BisectionConfig = BisectionConfig(),
                  samples: int = 2000, seed: Seed = 0) -> MocuEstimate:
    """Monte-Carlo estimate of the mean objective cost of uncertainty.

    Deterministic given (cls, seed, samples, configs); the per-sample
    control searches are independent and run batched.
    """
    _, xis = sample_xis(cls, ens, cfg, bis, samples, seed)
    return _estimate_from_xis(xis)


def _conditional_scores(cls, ens, cfg, bis, samples, seed, pair,
                        a_batch, xis) -> PairScore:
    """Expected remaining cost for one pair from a shared sample set."""
    i, j = pair
    p_sync, p_nosync = outcome_probabilities(cls, ens, i, j)
    t = clamped_threshold(cls, ens, i, j)
    sync_mask = a_batch[:, i, j] >= t
    remaining = 0.0
    var = 0.0
    for branch, (p, mask) in enumerate(
            ((p_sync, sync_mask), (p_nosync, ~sync_mask))):
        if p == 0.0:
            continue
        if np.any(mask):
            est = _estimate_from_xis(xis[mask])
        else:
            # the prior draw missed this branch entirely; fall back to a
            # fresh conditional estimate so the weight p is still honored
            cond = update_bounds(cls, ExperimentOutcome(i, j, branch == 0), ens)
            est = estimate_mocu(cond, ens, cfg, bis, samples, subseed(seed, i, j, branch))
        remaining += p * est.value
        var += (p * est.stderr) ** 2
    return PairScore(pair=(i, j), remaining=remaining, stderr=float(np.sqrt(var)),
                     p_sync=p_sync, threshold=t)


def expected_remaining_mocu(cls: UncertaintyClass, ens: OscillatorEnsemble,
                            i: int, j: int, cfg: SimConfig = SimConfig(),
                            bis: BisectionConfig = BisectionConfig(),
                            samples: int = 2000, seed: Seed = 0,
                            mode: str = "shared") -> float:
    """Expected cost of uncertainty remaining after experimenting on (i, j).

    ``mode="shared"`` partitions one prior sample set on the pair's lock
    threshold (each part is exactly a draw from the conditioned class);
    ``mode="fresh"`` estimates both conditional costs from independent
    draws. A zero-probability outcome contributes zero and is not evaluated.
    """
    if mode == "shared":
        a_batch, xis = sample_xis(cls, ens, cfg, bis, samples, seed)
        return _conditional_scores(cls, ens, cfg, bis, samples, seed,
                                   (i, j), a_batch, xis).remaining
    if mode != "fresh":
        raise ValueError(f"unknown mode {mode!r}")
    remaining = 0.0
    for branch, p in zip((0, 1), outcome_probabilities(cls, ens, i, j)):
        if p == 0.0:
            continue
        cond = update_bounds(cls, ExperimentOutcome(i, j, branch == 0), ens)
        est = estimate_mocu(cond, ens, cfg, bis, samples, subseed(seed, i, j, branch))
        remaining += p * est.value
    return remaining


def remaining_mocu_table(cls: UncertaintyClass, ens: OscillatorEnsemble,
                         cfg: SimConfig = SimConfig(),
                         bis: BisectionConfig = BisectionConfig(),
                         samples: int = 2000, seed: Seed = 0,
                         pairs: list[tuple[int, int]] | None = None) -> list[PairScore]:
    """Expected remaining cost for every candidate pair, one shared sample set."""
    if pairs is None:
        pairs = cls.pairs()
    if not pairs:
        raise ValueError("no candidate pairs")
    a_batch, xis = sample_xis(cls, ens, cfg, bis, samples, seed)
    return [_conditional_scores(cls, ens, cfg, bis, samples, seed, p, a_batch, xis)
            for p in pairs]


def select_optimal_pair(cls: UncertaintyClass, ens: OscillatorEnsemble,
                        cfg: SimConfig = SimConfig(),
                        bis: BisectionConfig = BisectionConfig(),
                        samples: int = 2000, seed: Seed = 0,
                        pairs: list[tuple[int, int]] | None = None):
    """Pair whose experiment minimizes the expected remaining cost.

    Returns (pair, table); ties break lexicographically. The table carries
    every candidate's score for logging.
    """
    table = remaining_mocu_table(cls, ens, cfg, bis, samples, seed, pairs)
    best = min(table, key=lambda s: (s.remaining, s.pair))
    return best.pair, table
