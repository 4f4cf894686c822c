"""Exact-size 2x2 complex linear algebra.

Matrices are plain ``numpy`` arrays of shape ``(2, 2)`` and dtype ``complex128``.
Vectorization is column stacking, ``vec(rho) = (rho11, rho21, rho12, rho22)``.
"""
from __future__ import annotations

import numpy as np

from .errors import DegenerateSpectrumError

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SX, SY, SZ)

HERMITIAN_ATOL = 1e-14
DEGENERACY_RTOL = 1e-13


def mat2(a11, a12, a21, a22) -> np.ndarray:
    """Build a 2x2 complex matrix from row-major entries."""
    return np.array([[a11, a12], [a21, a22]], dtype=complex)


def dagger(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def trace(a: np.ndarray) -> complex:
    return a[0, 0] + a[1, 1]


def hs_inner(a: np.ndarray, b: np.ndarray) -> complex:
    """Hilbert-Schmidt inner product ``tr(A^dagger B)``."""
    return complex(np.vdot(a, b))


def hs_norm(a: np.ndarray) -> float:
    return float(np.sqrt(np.vdot(a, a).real))


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def is_hermitian(a: np.ndarray, atol: float = HERMITIAN_ATOL) -> bool:
    return bool(np.all(np.abs(a - dagger(a)) <= atol))


def vec(a: np.ndarray) -> np.ndarray:
    """Column-stacked vectorization ``(a11, a21, a12, a22)``."""
    return np.asarray(a, dtype=complex).reshape(4, order="F").copy()


def unvec(v: np.ndarray) -> np.ndarray:
    return np.asarray(v, dtype=complex).reshape((2, 2), order="F").copy()


def pauli_coefficients(a: np.ndarray) -> tuple[complex, np.ndarray]:
    """Return ``(a0, (ax, ay, az))`` with ``A = a0 I + a . sigma``."""
    a0 = 0.5 * (a[0, 0] + a[1, 1])
    ax = 0.5 * (a[0, 1] + a[1, 0])
    ay = 0.5j * (a[0, 1] - a[1, 0])
    az = 0.5 * (a[0, 0] - a[1, 1])
    return a0, np.array([ax, ay, az])


def from_bloch(a0: float, n) -> np.ndarray:
    """``a0 I + n . sigma`` for a real 3-vector ``n``."""
    nx, ny, nz = n
    return np.array([[a0 + nz, nx - 1j * ny], [nx + 1j * ny, a0 - nz]], dtype=complex)


def eig_herm2(a: np.ndarray):
    """Closed-form spectral decomposition of a Hermitian 2x2 matrix.

    Writing ``A = a0 I + a . sigma`` the eigenvalues are ``a0 -/+ |a|`` and
    the projections are ``(I -/+ a_hat . sigma) / 2``. No eigenvectors are
    formed, so there is no phase ambiguity.

    Returns
    -------
    e_minus, e_plus : float
    p_minus, p_plus : ndarray
        Spectral projections, ``A = e_minus p_minus + e_plus p_plus``.

    Raises
    ------
    DegenerateSpectrumError
        If ``e_plus - e_minus < 1e-13 * ||A||_HS``.
    """
    a = np.asarray(a, dtype=complex)
    a0, n = pauli_coefficients(a)
    a0 = a0.real
    n = n.real
    r = float(np.sqrt(n @ n))
    if 2.0 * r < DEGENERACY_RTOL * hs_norm(a) or r == 0.0:
        raise DegenerateSpectrumError(f"eigenvalue splitting {2 * r:.3e} is below threshold")
    n_hat = n / r
    p_plus = from_bloch(0.5, 0.5 * n_hat)
    p_minus = I2 - p_plus
    return a0 - r, a0 + r, p_minus, p_plus
