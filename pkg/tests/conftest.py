import numpy as np
import pytest

from geninv.matrix import frobenius


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)


def random_complex(rng, m, n, rank=None):
    """Random complex matrix, optionally of prescribed rank."""
    if rank is None:
        return rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
    left = rng.standard_normal((m, rank)) + 1j * rng.standard_normal((m, rank))
    right = rng.standard_normal((rank, n)) + 1j * rng.standard_normal((rank, n))
    return left @ right


def rel(x, y):
    """Frobenius distance of x from y, relative to max(1, ||y||)."""
    x = np.asarray(x, dtype=np.complex128)
    y = np.asarray(y, dtype=np.complex128)
    return frobenius(x - y) / max(1.0, frobenius(y))
