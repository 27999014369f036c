import numpy as np
import pytest

from bkwzeros.families import BUILTIN


@pytest.fixture(params=sorted(BUILTIN))
def builtin_name(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def rel_coeff_error(a, b) -> float:
    """Max coefficient difference relative to the largest coefficient."""
    n = max(len(a.coeffs), len(b.coeffs))
    ca = np.zeros(n, complex)
    cb = np.zeros(n, complex)
    ca[: len(a.coeffs)] = a.coeffs
    cb[: len(b.coeffs)] = b.coeffs
    scale = max(np.abs(ca).max(initial=0), np.abs(cb).max(initial=0), 1e-300)
    return float(np.abs(ca - cb).max(initial=0) / scale)
