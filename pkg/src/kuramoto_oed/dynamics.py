"""Kuramoto phase dynamics: derivatives, fixed-step RK4, and the numeric
frequency-synchronization decision.

The model is the classic all-to-all phase oscillator system

    dtheta_i/dt = omega_i + sum_j a[i, j] * sin(theta_j - theta_i)

optionally extended by a control oscillator with natural frequency
``omega_control`` that is coupled to every system oscillator with a uniform
strength (the "control strength"). Phases are plain float vectors and are
never reduced mod 2*pi; only phase differences enter the equations.

Everything here is a pure function of its inputs, so values can be shared
freely across threads. This module is the readable single-system reference;
the vectorized batch path used by the Monte-Carlo estimators lives in
``_kernels`` and is tested against this one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

RECIPROCAL = "reciprocal"
ROTATOR = "rotator"

#: Default integration horizon and step for synchronization decisions.
DEFAULT_T_FINAL = 5.0
DEFAULT_DT = 1.0 / 160.0
DEFAULT_SYNC_TOL = 1e-3
DEFAULT_SYNC_WINDOW = 32


class NonFiniteStateError(RuntimeError):
    """Integration produced NaN/inf; reported rather than clamped."""


@dataclass(frozen=True)
class OscillatorEnsemble:
    """Natural frequencies (rad/time) of the system oscillators plus the
    control oscillator appended for synchronization control.

    ``control_mode`` selects how the control oscillator itself evolves:
    ``"reciprocal"`` (default) couples it back to the system with the same
    uniform strength, making it an ordinary Kuramoto oscillator;
    ``"rotator"`` pins it to its natural frequency (pure external forcing).
    """

    omega: np.ndarray
    omega_control: float
    control_mode: str = RECIPROCAL

    def __post_init__(self):
        omega = np.asarray(self.omega, dtype=float)
        object.__setattr__(self, "omega", omega)
        if omega.ndim != 1 or omega.size < 1:
            raise ValueError("omega must be a 1-d vector with at least one entry")
        if not np.all(np.isfinite(omega)) or not np.isfinite(self.omega_control):
            raise ValueError("natural frequencies must be finite")
        if self.control_mode not in (RECIPROCAL, ROTATOR):
            raise ValueError(f"unknown control_mode {self.control_mode!r}")

    @property
    def n(self) -> int:
        return self.omega.size


@dataclass(frozen=True)
class CouplingMatrix:
    """One realization of the symmetric pairwise coupling strengths."""

    a: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float)
        object.__setattr__(self, "a", a)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("coupling matrix must be square")
        if not np.all(np.isfinite(a)):
            raise ValueError("coupling strengths must be finite")
        if np.any(a < 0):
            raise ValueError("coupling strengths must be non-negative")
        if np.any(np.diag(a) != 0):
            raise ValueError("coupling matrix must have a zero diagonal")
        if not np.array_equal(a, a.T):
            raise ValueError("coupling matrix must be symmetric")

    @property
    def n(self) -> int:
        return self.a.shape[0]


@dataclass(frozen=True)
class SimConfig:
    """Fixed-step integration settings and the sync decision rule.

    A system counts as frequency-synchronized when the mean, over the last
    ``sync_window`` steps, of the largest pairwise spread of instantaneous
    frequencies falls below ``sync_tol``.
    """

    t_final: float = DEFAULT_T_FINAL
    dt: float = DEFAULT_DT
    sync_tol: float = DEFAULT_SYNC_TOL
    sync_window: int = DEFAULT_SYNC_WINDOW

    def __post_init__(self):
        if not (self.t_final > 0):
            raise ValueError("t_final must be positive")
        if not (0 < self.dt < self.t_final):
            raise ValueError("dt must satisfy 0 < dt < t_final")
        if not (self.sync_tol > 0):
            raise ValueError("sync_tol must be positive")
        if not (1 <= self.sync_window <= self.nsteps):
            raise ValueError("sync_window must lie in [1, t_final/dt]")

    @property
    def nsteps(self) -> int:
        return int(round(self.t_final / self.dt))


class IntegrationResult(NamedTuple):
    theta: np.ndarray              # final phase vector
    tail_derivatives: np.ndarray   # (sync_window, m) derivatives at the last steps


def _extended_system(ens: OscillatorEnsemble, a: CouplingMatrix,
                     control_strength: float | None):
    """Frequencies and coupling matrix of the (optionally) controlled system."""
    n = ens.n
    if a.n != n:
        raise ValueError(f"coupling matrix is {a.n}x{a.n} but ensemble has n={n}")
    if control_strength is None:
        return ens.omega, a.a
    c = float(control_strength)
    if c < 0 or not np.isfinite(c):
        raise ValueError("control strength must be finite and non-negative")
    omega_ext = np.append(ens.omega, ens.omega_control)
    a_ext = np.zeros((n + 1, n + 1))
    a_ext[:n, :n] = a.a
    a_ext[:n, n] = c
    if ens.control_mode == RECIPROCAL:
        a_ext[n, :n] = c
    return omega_ext, a_ext


def phase_derivatives(theta: np.ndarray, ens: OscillatorEnsemble, a: CouplingMatrix,
                      control_strength: float | None = None) -> np.ndarray:
    """Instantaneous frequencies dtheta/dt for every oscillator.

    With a control strength given, ``theta`` must carry the control
    oscillator's phase as its last entry.
    """
    theta = np.asarray(theta, dtype=float)
    omega_ext, a_ext = _extended_system(ens, a, control_strength)
    if theta.shape != omega_ext.shape:
        raise ValueError(
            f"state has length {theta.size}, expected {omega_ext.size} "
            f"(control {'present' if control_strength is not None else 'absent'})")
    diff = theta[None, :] - theta[:, None]
    return omega_ext + (a_ext * np.sin(diff)).sum(axis=1)


def _rhs(theta, omega_ext, a_ext):
    diff = theta[None, :] - theta[:, None]
    return omega_ext + (a_ext * np.sin(diff)).sum(axis=1)


def integrate_rk4(initial: np.ndarray, ens: OscillatorEnsemble, a: CouplingMatrix,
                  control_strength: float | None = None,
                  cfg: SimConfig = SimConfig()) -> IntegrationResult:
    """Advance the phases with classical fixed-step RK4 over [0, t_final].

    Returns the final state together with the phase derivatives recorded at
    the end of each of the last ``cfg.sync_window`` steps (the record that
    the synchronization decision is based on).
    """
    omega_ext, a_ext = _extended_system(ens, a, control_strength)
    theta = np.array(initial, dtype=float)
    if theta.shape != omega_ext.shape:
        raise ValueError(
            f"initial state has length {theta.size}, expected {omega_ext.size}")
    nsteps = cfg.nsteps
    dt = cfg.dt
    tail = np.empty((cfg.sync_window, theta.size))
    for step in range(nsteps):
        k1 = _rhs(theta, omega_ext, a_ext)
        k2 = _rhs(theta + 0.5 * dt * k1, omega_ext, a_ext)
        k3 = _rhs(theta + 0.5 * dt * k2, omega_ext, a_ext)
        k4 = _rhs(theta + dt * k3, omega_ext, a_ext)
        theta = theta + (dt / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)
        if not np.all(np.isfinite(theta)):
            raise NonFiniteStateError(
                f"non-finite phase at step {step + 1} of {nsteps} (t={dt * (step + 1):g})")
        rec = step - (nsteps - cfg.sync_window)
        if rec >= 0:
            tail[rec] = _rhs(theta, omega_ext, a_ext)
    return IntegrationResult(theta, tail)


def criterion_size(ens: OscillatorEnsemble, control_present: bool) -> int:
    """How many leading oscillators enter the synchronization criterion.

    The control oscillator is excluded, except in the degenerate one-system-
    oscillator case where the pair (oscillator, control) is the only thing
    that can meaningfully lock.
    """
    if control_present and ens.n == 1:
        return 2
    return ens.n


def trailing_frequency_spread(ens: OscillatorEnsemble, a: CouplingMatrix,
                              control_strength: float | None = None,
                              cfg: SimConfig = SimConfig()) -> float:
    """Mean over the trailing window of the max pairwise frequency spread,
    starting from all-zero phases."""
    m = ens.n + (1 if control_strength is not None else 0)
    result = integrate_rk4(np.zeros(m), ens, a, control_strength, cfg)
    ncrit = criterion_size(ens, control_strength is not None)
    d = result.tail_derivatives[:, :ncrit]
    return float(np.mean(d.max(axis=1) - d.min(axis=1)))


def is_frequency_synchronized(ens: OscillatorEnsemble, a: CouplingMatrix,
                              control_strength: float | None = None,
                              cfg: SimConfig = SimConfig()) -> bool:
    """Numeric frequency-lock decision for the system started at theta = 0."""
    return trailing_frequency_spread(ens, a, control_strength, cfg) < cfg.sync_tol
