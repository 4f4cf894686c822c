import numpy as np
import pytest

from lzdephase.errors import SingularTransportError
from lzdephase.linalg2 import I2, hs_inner, unvec, vec
from lzdephase.lindblad import apply_L, apply_Ladj, superop_matrix, transport_X
from lzdephase.model import Constant, ModelParams, PiecewiseLinear, spectral

from conftest import hs, random_hermitian


def random_params(rng):
    return ModelParams(rng.uniform(0.1, 4), Constant(rng.uniform(0, 4)), rng.uniform(0.5, 2))


def test_projections_and_identity_are_stationary(p11):
    for s in (-3.0, 0.0, 0.7, 12.0):
        sd = spectral(s, p11)
        assert hs(apply_L(s, sd.P_plus, p11)) <= 1e-15
        assert hs(apply_L(s, sd.P_minus, p11)) <= 1e-15
        assert hs(apply_L(s, I2 / 2, p11)) <= 1e-15
        assert hs(apply_Ladj(s, sd.P_plus, p11)) <= 1e-15
        assert hs(apply_Ladj(s, I2, p11)) <= 1e-15


def test_offdiagonal_block_is_an_eigenvector(rng):
    # commutator multiplies P+ A P- by (e+ - e-) = g; dephasing subtracts hbar*gamma
    for _ in range(200):
        p = random_params(rng)
        s = rng.uniform(-20, 20)
        sd = spectral(s, p)
        A = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        blk = sd.P_plus @ A @ sd.P_minus
        want = (-1j * (sd.e_plus - sd.e_minus) - p.rate(s)) * blk
        assert hs(apply_L(s, blk, p) - want) <= 1e-13 * max(1, abs(s))
        for Pk, ek, Pj, ej in ((sd.P_plus, sd.e_plus, sd.P_minus, sd.e_minus),
                               (sd.P_minus, sd.e_minus, sd.P_plus, sd.e_plus)):
            blk = Pk @ A @ Pj
            want = 1j * (ek - ej + 1j * p.rate(s)) * blk
            assert hs(apply_Ladj(s, blk, p) - want) <= 1e-13 * max(1, abs(s))


def test_structural_properties(rng):
    for _ in range(1000):
        p = random_params(rng)
        s = rng.uniform(-10, 10)
        rho = random_hermitian(rng)
        rho /= hs(rho)
        A = random_hermitian(rng)
        out = apply_L(s, rho, p)
        assert abs(np.trace(out)) <= 1e-14 * max(1, abs(s))
        assert hs(out - out.conj().T) <= 1e-14 * max(1, abs(s), p.rate(s))
        assert abs(hs_inner(apply_Ladj(s, A, p), rho) - hs_inner(A, out)) <= 1e-12
        d = np.trace(rho @ out)
        assert d.real <= 1e-14
        assert abs(d.imag) <= 1e-14 * max(1, abs(s))
        sd = spectral(s, p)
        a, b = rng.normal(size=2)
        assert hs(apply_L(s, a * sd.P_minus + b * sd.P_plus, p)) <= 1e-13 * max(1, abs(s))


def test_superop_matrix_matches_apply_L(p11):
    s = 0.8
    m = superop_matrix(s, p11)
    for k in range(4):
        e = np.zeros(4, dtype=complex)
        e[k] = 1
        np.testing.assert_allclose(m @ e, vec(apply_L(s, unvec(e), p11)), atol=1e-13)
    np.testing.assert_allclose(vec(I2).conj() @ m, 0, atol=1e-13)


def test_superop_spectrum(rng):
    for _ in range(100):
        p = random_params(rng)
        s = rng.uniform(-10, 10)
        ev = np.linalg.eigvals(superop_matrix(s, p))
        G, g = p.rate(s), spectral(s, p).g
        ev = ev[np.argsort(np.abs(ev))]
        np.testing.assert_allclose(ev[:2], 0, atol=1e-12)
        np.testing.assert_allclose(sorted(ev[2:], key=lambda z: z.imag),
                                   [-G - 1j * g, -G + 1j * g], atol=1e-12)


def test_transport_residuals_examples(p11):
    for s in (-5.0, 0.0, 3.0):
        sd = spectral(s, p11)
        X = transport_X(s, p11, "plus")
        assert hs(apply_Ladj(s, X, p11) - sd.dP_plus) <= 1e-12
        Xm = transport_X(s, p11, "minus")
        assert hs(apply_L(s, Xm, p11) - sd.dP_minus) <= 1e-12
        for Y in (X, Xm):
            assert hs(sd.P_plus @ Y @ sd.P_plus) <= 1e-15
            assert hs(sd.P_minus @ Y @ sd.P_minus) <= 1e-15


def test_transport_matches_linear_solve_oracle(rng):
    # solve M^dagger vec(X) = vec(dP+) restricted to the off-diagonal blocks
    for _ in range(100):
        p = random_params(rng)
        s = rng.uniform(-10, 10)
        if p.rate(s) == 0:
            continue
        sd = spectral(s, p)
        m_adj = superop_matrix(s, p).conj().T
        x_ls, *_ = np.linalg.lstsq(m_adj, vec(sd.dP_plus), rcond=None)
        X_ls = unvec(x_ls)
        X_ls = X_ls - sd.P_plus @ X_ls @ sd.P_plus - sd.P_minus @ X_ls @ sd.P_minus
        assert hs(X_ls - transport_X(s, p)) <= 1e-10


def test_transport_decays_like_inverse_cube(p11):
    ratio = hs(transport_X(20.0, p11)) / hs(transport_X(10.0, p11))
    assert ratio == pytest.approx((10 / 20) ** 3, rel=0.25)


def test_transport_time_dependent_rate():
    p = ModelParams(1.0, PiecewiseLinear(((-1, 0.0), (1, 3.0))))
    for s in (-2.0, -0.3, 0.4, 2.0):
        assert hs(apply_Ladj(s, transport_X(s, p), p) - spectral(s, p).dP_plus) <= 1e-12


def test_transport_guard_only_for_closed_gap():
    p = ModelParams(1e-13, Constant(0.0))
    with pytest.raises(SingularTransportError):
        transport_X(0.0, p)
    # with dephasing the denominator stays finite
    transport_X(0.0, ModelParams(1e-13, Constant(1.0)))
    with pytest.raises(ValueError):
        transport_X(0.0, ModelParams(1.0), which="sideways")
