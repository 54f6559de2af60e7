import numpy as np
import pytest

from kuramoto_oed import CouplingMatrix, OscillatorEnsemble, UncertaintyClass


@pytest.fixture(scope="session")
def two_osc():
    return OscillatorEnsemble(omega=np.array([1.0, -1.0]), omega_control=0.0)


@pytest.fixture(scope="session")
def n5_setup():
    from kuramoto_oed import build_benchmark_setup
    return build_benchmark_setup("n5", seed=0)


def coupling(n, entries=None):
    """Symmetric coupling matrix from {(i, j): value} shorthand."""
    a = np.zeros((n, n))
    for (i, j), v in (entries or {}).items():
        a[i, j] = a[j, i] = v
    return CouplingMatrix(a)


def box(n, entries=None):
    """Uncertainty class from {(i, j): (lower, upper)} shorthand."""
    lower = np.zeros((n, n))
    upper = np.zeros((n, n))
    for (i, j), (lo, hi) in (entries or {}).items():
        lower[i, j] = lower[j, i] = lo
        upper[i, j] = upper[j, i] = hi
    return UncertaintyClass(lower=lower, upper=upper)
