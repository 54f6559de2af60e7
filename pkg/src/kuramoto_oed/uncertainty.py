"""Interval uncertainty over pairwise coupling strengths.

The unknown coupling of every pair (i, j) is described by an interval
[lower[i, j], upper[i, j]] with a uniform prior over the box. Pairwise
synchronization experiments are resolved analytically: an isolated pair
started at equal phases frequency-locks exactly when its coupling is at
least half the natural-frequency gap, so an observed outcome tightens one
bound of one entry and nothing else.

Indices are 0-based throughout, with pairs always written (i, j), i < j.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import CouplingMatrix, OscillatorEnsemble, SimConfig, is_frequency_synchronized
from .seeding import Seed, make_rng


class InconsistentOutcomeError(ValueError):
    """An experiment outcome that no coupling inside the class can produce."""


@dataclass(frozen=True)
class UncertaintyClass:
    """Elementwise lower/upper bound matrices on the symmetric couplings."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.asarray(self.lower, dtype=float)
        upper = np.asarray(self.upper, dtype=float)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        if lower.shape != upper.shape or lower.ndim != 2 or lower.shape[0] != lower.shape[1]:
            raise ValueError("bound matrices must be square and of equal shape")
        for name, mat in (("lower", lower), ("upper", upper)):
            if not np.all(np.isfinite(mat)):
                raise ValueError(f"{name} bounds must be finite")
            if not np.array_equal(mat, mat.T):
                raise ValueError(f"{name} bounds must be symmetric")
            if np.any(np.diag(mat) != 0):
                raise ValueError(f"{name} bounds must have a zero diagonal")
        if np.any(lower < 0):
            raise ValueError("lower bounds must be non-negative")
        if np.any(lower > upper):
            raise ValueError("lower bounds must not exceed upper bounds")

    @property
    def n(self) -> int:
        return self.lower.shape[0]

    def pairs(self) -> list[tuple[int, int]]:
        n = self.n
        return [(i, j) for i in range(n) for j in range(i + 1, n)]

    def contains(self, truth: CouplingMatrix) -> bool:
        return bool(np.all(self.lower <= truth.a) and np.all(truth.a <= self.upper))

    def to_document(self) -> dict:
        """Nested-list form: an n x n matrix of [lower, upper] pairs."""
        n = self.n
        return {
            "bounds": [[[float(self.lower[i, j]), float(self.upper[i, j])]
                        for j in range(n)] for i in range(n)],
        }

    @classmethod
    def from_document(cls, doc: dict) -> "UncertaintyClass":
        try:
            bounds = np.asarray(doc["bounds"], dtype=float)
        except KeyError:
            raise ValueError("uncertainty document lacks a 'bounds' field")
        except (TypeError, ValueError):
            raise ValueError("'bounds' must be an n x n matrix of [lower, upper] pairs")
        if bounds.ndim != 3 or bounds.shape[2] != 2 or bounds.shape[0] != bounds.shape[1]:
            raise ValueError("'bounds' must be an n x n matrix of [lower, upper] pairs")
        return cls(lower=bounds[:, :, 0], upper=bounds[:, :, 1])


@dataclass(frozen=True)
class ExperimentOutcome:
    """Result of the pairwise synchronization experiment on (i, j)."""

    i: int
    j: int
    synchronized: bool

    def __post_init__(self):
        if not (0 <= self.i < self.j):
            raise ValueError("experiment pair must satisfy 0 <= i < j")


def sample_prior(cls: UncertaintyClass, seed: Seed) -> CouplingMatrix:
    """Draw one coupling matrix from the uniform prior over the class.

    Entries are drawn independently, pair by pair in lexicographic order, so
    the result is fully determined by the seed.
    """
    rng = make_rng(seed)
    n = cls.n
    iu, ju = np.triu_indices(n, k=1)
    draws = rng.uniform(cls.lower[iu, ju], cls.upper[iu, ju])
    a = np.zeros((n, n))
    a[iu, ju] = draws
    a[ju, iu] = draws
    return CouplingMatrix(a)


def pair_threshold(ens: OscillatorEnsemble, i: int, j: int) -> float:
    """Coupling above which the isolated pair (i, j) frequency-locks."""
    _check_pair(ens.n, i, j)
    return abs(ens.omega[i] - ens.omega[j]) / 2.0


def clamped_threshold(cls: UncertaintyClass, ens: OscillatorEnsemble,
                      i: int, j: int) -> float:
    """The pair threshold clipped into the current bound interval."""
    _check_pair(cls.n, i, j)
    t = pair_threshold(ens, i, j)
    return float(min(max(t, cls.lower[i, j]), cls.upper[i, j]))


def virtual_experiment(truth: CouplingMatrix, ens: OscillatorEnsemble,
                       i: int, j: int) -> ExperimentOutcome:
    """Outcome of the pairwise experiment under a known ground truth.

    Resolved by the exact two-oscillator lock condition rather than by
    simulation; ``simulate_pair_outcome`` provides the numerical cross-check.
    """
    _check_pair(truth.n, i, j)
    return ExperimentOutcome(i, j, bool(truth.a[i, j] >= pair_threshold(ens, i, j)))


def simulate_pair_outcome(truth: CouplingMatrix, ens: OscillatorEnsemble,
                          i: int, j: int, cfg: SimConfig = SimConfig()) -> bool:
    """Decide the pair experiment by actually integrating the isolated pair.

    Test utility: independent of the analytic rule used by
    ``virtual_experiment`` (agrees with it away from the lock threshold).
    """
    _check_pair(truth.n, i, j)
    sub_ens = OscillatorEnsemble(omega=ens.omega[[i, j]], omega_control=0.0)
    sub_a = CouplingMatrix(np.array([[0.0, truth.a[i, j]], [truth.a[i, j], 0.0]]))
    return is_frequency_synchronized(sub_ens, sub_a, None, cfg)


def update_bounds(cls: UncertaintyClass, outcome: ExperimentOutcome,
                  ens: OscillatorEnsemble) -> UncertaintyClass:
    """Tighten one bound of one entry from an experiment outcome.

    A synchronized outcome raises the lower bound to the pair threshold, a
    non-synchronized outcome drops the upper bound to it; outcomes that no
    coupling inside the class could have produced raise
    ``InconsistentOutcomeError``. Repeating an experiment is a no-op.
    """
    i, j = outcome.i, outcome.j
    _check_pair(cls.n, i, j)
    t = pair_threshold(ens, i, j)
    lower = cls.lower.copy()
    upper = cls.upper.copy()
    if outcome.synchronized:
        new_lower = max(t, lower[i, j])
        if new_lower > upper[i, j]:
            raise InconsistentOutcomeError(
                f"pair ({i}, {j}) synchronized but threshold {t:g} exceeds "
                f"upper bound {upper[i, j]:g}")
        lower[i, j] = lower[j, i] = new_lower
    else:
        new_upper = min(t, upper[i, j])
        if new_upper < lower[i, j]:
            raise InconsistentOutcomeError(
                f"pair ({i}, {j}) failed to synchronize but threshold {t:g} is below "
                f"lower bound {lower[i, j]:g}")
        upper[i, j] = upper[j, i] = new_upper
    return UncertaintyClass(lower=lower, upper=upper)


def outcome_probabilities(cls: UncertaintyClass, ens: OscillatorEnsemble,
                          i: int, j: int) -> tuple[float, float]:
    """(p_sync, p_nosync) of the pair experiment under the uniform prior.

    For a zero-width interval the outcome is deterministic and the pair is
    (1, 0) or (0, 1) according to the point value.
    """
    _check_pair(cls.n, i, j)
    lo, hi = cls.lower[i, j], cls.upper[i, j]
    if hi == lo:
        return (1.0, 0.0) if lo >= pair_threshold(ens, i, j) else (0.0, 1.0)
    t = clamped_threshold(cls, ens, i, j)
    p_sync = (hi - t) / (hi - lo)
    return p_sync, 1.0 - p_sync


def interval_widths(cls: UncertaintyClass) -> list[tuple[tuple[int, int], float]]:
    """Pairs and their bound widths, widest first, ties lexicographic."""
    items = [((i, j), float(cls.upper[i, j] - cls.lower[i, j])) for i, j in cls.pairs()]
    return sorted(items, key=lambda e: (-e[1], e[0]))


def _check_pair(n: int, i: int, j: int):
    if not (0 <= i < j < n):
        raise ValueError(f"invalid pair ({i}, {j}) for n={n}")
