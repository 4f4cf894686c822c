"""The linearly swept two-level crossing and its dephasing-rate profile.

Internally every formula uses hbar = 1. :class:`ModelParams` carries the
physical hbar and exposes the rescaled quantities ``hbar * gamma`` and
``hbar * eps`` that the formulas actually need.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .linalg2 import I2, SX, SZ


@dataclass(frozen=True)
class Constant:
    value: float

    def __post_init__(self):
        if not (self.value >= 0.0 and math.isfinite(self.value)):
            raise ValueError(f"dephasing rate must be finite and >= 0, got {self.value!r}")

    def at(self, s: float) -> float:
        return self.value

    def breakpoints(self) -> tuple[tuple[float, ...], tuple[float, ...]]:
        return (0.0,), (self.value,)

    @property
    def max_value(self) -> float:
        return self.value


@dataclass(frozen=True)
class PiecewiseLinear:
    """Linear interpolation through ``(s_i, gamma_i)``; clamped outside the table."""

    points: tuple[tuple[float, float], ...]

    def __post_init__(self):
        pts = tuple((float(s), float(g)) for s, g in self.points)
        if not pts:
            raise ValueError("piecewise-linear profile needs at least one breakpoint")
        for (sa, _), (sb, _) in zip(pts, pts[1:]):
            if not sb > sa:
                raise ValueError("breakpoints must be strictly increasing")
        for s, g in pts:
            if not (g >= 0.0 and math.isfinite(g) and math.isfinite(s)):
                raise ValueError(f"invalid breakpoint ({s}, {g})")
        object.__setattr__(self, "points", pts)

    def at(self, s: float) -> float:
        xs = [p[0] for p in self.points]
        if s <= xs[0]:
            return self.points[0][1]
        if s >= xs[-1]:
            return self.points[-1][1]
        i = bisect.bisect_right(xs, s)
        (sa, ga), (sb, gb) = self.points[i - 1], self.points[i]
        w = (s - sa) / (sb - sa)
        return ga + w * (gb - ga)

    def breakpoints(self) -> tuple[tuple[float, ...], tuple[float, ...]]:
        return tuple(p[0] for p in self.points), tuple(p[1] for p in self.points)

    @property
    def max_value(self) -> float:
        return max(p[1] for p in self.points)


GammaProfile = Union[Constant, PiecewiseLinear]


def as_profile(gamma) -> GammaProfile:
    """Coerce a number or a list of ``(s, gamma)`` pairs into a profile."""
    if isinstance(gamma, (Constant, PiecewiseLinear)):
        return gamma
    if isinstance(gamma, (int, float)):
        return Constant(float(gamma))
    return PiecewiseLinear(tuple(tuple(p) for p in gamma))


def gamma_at(s: float, prof: GammaProfile) -> float:
    return prof.at(s)


@dataclass(frozen=True)
class ModelParams:
    g0: float
    gamma: GammaProfile = field(default_factory=lambda: Constant(0.0))
    hbar: float = 1.0

    def __post_init__(self):
        if not self.g0 > 0:
            raise ValueError(f"g0 must be > 0, got {self.g0!r}")
        if not self.hbar > 0:
            raise ValueError(f"hbar must be > 0, got {self.hbar!r}")
        object.__setattr__(self, "gamma", as_profile(self.gamma))

    def rate(self, s: float) -> float:
        """Dephasing strength entering the generator, ``hbar * gamma(s)``."""
        return self.hbar * self.gamma.at(s)

    @property
    def constant_gamma(self) -> float | None:
        return self.gamma.value if isinstance(self.gamma, Constant) else None


@dataclass(frozen=True)
class SpectralData:
    s: float
    g: float
    e_minus: float
    e_plus: float
    P_minus: np.ndarray
    P_plus: np.ndarray
    dP_minus: np.ndarray
    dP_plus: np.ndarray


def hamiltonian(s: float, p: ModelParams) -> np.ndarray:
    return 0.5 * np.array([[s, p.g0], [p.g0, -s]], dtype=complex)


def gap(s: float, p: ModelParams) -> float:
    return math.hypot(s, p.g0)


def spectral(s: float, p: ModelParams) -> SpectralData:
    """Eigenvalues, projections and their s-derivatives from the Bloch vector.

    The upper projection is ``(I + (s sz + g0 sx)/g) / 2`` and its derivative
    ``g0 (g0 sz - s sx) / (2 g^3)``; both are smooth in ``s``.
    """
    g0 = p.g0
    g = gap(s, p)
    n_op = (s * SZ + g0 * SX) / g
    P_plus = 0.5 * (I2 + n_op)
    P_minus = 0.5 * (I2 - n_op)
    dP_plus = (g0 / (2.0 * g**3)) * (g0 * SZ - s * SX)
    return SpectralData(
        s=s, g=g, e_minus=-0.5 * g, e_plus=0.5 * g,
        P_minus=P_minus, P_plus=P_plus, dP_minus=-dP_plus, dP_plus=dP_plus,
    )


def default_window(p: ModelParams) -> float:
    """Half-width S of the default window ``[-S, S]``: ``20 * max(g0, hbar*gamma_max)``."""
    return 20.0 * max(p.g0, p.hbar * p.gamma.max_value)


def profile_arrays(prof: GammaProfile) -> tuple[np.ndarray, np.ndarray]:
    xs, ys = prof.breakpoints()
    return np.asarray(xs, dtype=float), np.asarray(ys, dtype=float)


