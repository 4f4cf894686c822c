"""Dephasing Lindblad generator, its adjoint, and the transport solution X(s)."""
from __future__ import annotations

import numpy as np

from .errors import SingularTransportError
from .linalg2 import unvec, vec
from .model import ModelParams, SpectralData, hamiltonian, spectral

GAP_GUARD = 1e-12


def _dephase(sd: SpectralData, a: np.ndarray) -> np.ndarray:
    return sd.P_minus @ a @ sd.P_plus + sd.P_plus @ a @ sd.P_minus


def apply_L(s: float, rho: np.ndarray, p: ModelParams) -> np.ndarray:
    """``-i[H, rho] - hbar*gamma (P- rho P+ + P+ rho P-)``."""
    h = hamiltonian(s, p)
    sd = spectral(s, p)
    return -1j * (h @ rho - rho @ h) - p.rate(s) * _dephase(sd, rho)


def apply_Ladj(s: float, a: np.ndarray, p: ModelParams) -> np.ndarray:
    """Heisenberg-picture generator, adjoint of :func:`apply_L` in the HS product."""
    h = hamiltonian(s, p)
    sd = spectral(s, p)
    return 1j * (h @ a - a @ h) - p.rate(s) * _dephase(sd, a)


def superop_matrix(s: float, p: ModelParams) -> np.ndarray:
    """4x4 matrix of the generator acting on column-stacked ``vec(rho)``."""
    m = np.empty((4, 4), dtype=complex)
    for k in range(4):
        e = np.zeros(4, dtype=complex)
        e[k] = 1.0
        m[:, k] = vec(apply_L(s, unvec(e), p))
    return m


def transport_X(s: float, p: ModelParams, which: str = "plus") -> np.ndarray:
    """Off-diagonal solution of the transport equation.

    ``which="plus"`` solves ``L*_s(X) = dP+/ds``::

        X = -i sum_{k != j} P_k dP+ P_j / (e_k - e_j + i hbar gamma)

    ``which="minus"`` swaps ``i -> -i`` and ``dP+ -> dP-`` and solves
    ``L_s(X) = dP-/ds`` instead.
    """
    if which not in ("plus", "minus"):
        raise ValueError(f"which must be 'plus' or 'minus', got {which!r}")
    sd = spectral(s, p)
    rate = p.rate(s)
    if rate == 0.0 and sd.g < GAP_GUARD * max(1.0, abs(s)):
        raise SingularTransportError(f"gap {sd.g:.3e} vanishes with zero dephasing at s={s}")
    e = {"+": sd.e_plus, "-": sd.e_minus}
    P = {"+": sd.P_plus, "-": sd.P_minus}
    if which == "plus":
        phase, dP = -1j, sd.dP_plus
    else:
        phase, dP = 1j, sd.dP_minus
    x = np.zeros((2, 2), dtype=complex)
    for k, j in (("+", "-"), ("-", "+")):
        x += P[k] @ dP @ P[j] / (e[k] - e[j] - phase * rate)
    return phase * x
