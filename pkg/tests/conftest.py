import numpy as np
import pytest

from lzdephase.model import Constant, ModelParams


@pytest.fixture
def rng():
    return np.random.default_rng(20261017)


@pytest.fixture
def p11():
    """g0 = 1, gamma = 1, hbar = 1."""
    return ModelParams(1.0, Constant(1.0))


def random_hermitian(rng, scale=1.0):
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    return scale * (a + a.conj().T) / 2


def hs(a):
    return float(np.linalg.norm(a))
