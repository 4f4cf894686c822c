import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lzdephase.errors import DegenerateSpectrumError
from lzdephase.linalg2 import I2, SX, SY, SZ, eig_herm2, hs_inner, hs_norm, unvec, vec
from lzdephase.model import ModelParams, hamiltonian

from conftest import random_hermitian

finite = st.floats(-1e3, 1e3, allow_nan=False)


@pytest.mark.parametrize("a, b, expected", [(I2, I2, 2), (SX, SY, 0), (SZ, SZ, 2)])
def test_hs_inner_examples(a, b, expected):
    assert hs_inner(a, b) == expected


def test_hs_inner_is_conjugate_linear_in_first_slot():
    a = np.array([[1j, 0], [0, 0]])
    assert hs_inner(a, I2) == -1j
    assert hs_inner(I2, a) == 1j


@settings(max_examples=200)
@given(st.lists(finite, min_size=8, max_size=8))
def test_hs_inner_self_is_real_nonnegative(xs):
    a = np.array(xs[:4]).reshape(2, 2) + 1j * np.array(xs[4:]).reshape(2, 2)
    v = hs_inner(a, a)
    assert v.imag == 0.0
    assert v.real >= 0.0


def test_vectorization_is_column_stacking():
    a = np.array([[1, 2], [3, 4]], dtype=complex)
    np.testing.assert_array_equal(vec(a), [1, 3, 2, 4])
    np.testing.assert_array_equal(unvec(vec(a)), a)


def test_eig_sigma_z():
    em, ep, pm, pp = eig_herm2(SZ)
    assert (em, ep) == (-1.0, 1.0)
    np.testing.assert_allclose(pm, np.diag([0, 1]), atol=1e-15)
    np.testing.assert_allclose(pp, np.diag([1, 0]), atol=1e-15)


def test_eig_half_sigma_x():
    em, ep, pm, pp = eig_herm2(hamiltonian(0.0, ModelParams(1.0)))
    assert (em, ep) == (-0.5, 0.5)
    np.testing.assert_allclose(pp, 0.5 * (I2 + SX), atol=1e-15)
    np.testing.assert_allclose(pm, 0.5 * (I2 - SX), atol=1e-15)


def test_eig_h11_matches_characteristic_polynomial():
    # lambda^2 = (s^2 + g0^2) / 4 at s = g0 = 1
    em, ep, _, _ = eig_herm2(hamiltonian(1.0, ModelParams(1.0)))
    assert em == pytest.approx(-np.sqrt(2) / 2, abs=1e-15)
    assert ep == pytest.approx(np.sqrt(2) / 2, abs=1e-15)


def test_eig_degenerate_raises():
    with pytest.raises(DegenerateSpectrumError):
        eig_herm2(3.0 * I2)
    with pytest.raises(DegenerateSpectrumError):
        eig_herm2(np.zeros((2, 2)))


def test_eig_random_hermitian_reconstruction_and_projector_algebra(rng):
    for _ in range(1000):
        a = random_hermitian(rng, scale=10 ** rng.uniform(-3, 3))
        em, ep, pm, pp = eig_herm2(a)
        n = hs_norm(a)
        assert em <= ep
        assert hs_norm(a - em * pm - ep * pp) <= 1e-12 * n
        assert hs_norm(pp @ pp - pp) <= 1e-12
        assert hs_norm(pm @ pm - pm) <= 1e-12
        assert hs_norm(pp @ pm) <= 1e-12
        assert hs_norm(pp + pm - I2) <= 1e-12
        np.testing.assert_allclose([em, ep], np.linalg.eigvalsh(a), atol=1e-12 * n)
