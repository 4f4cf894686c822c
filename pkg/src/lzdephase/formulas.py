"""Closed-form and quadrature evaluators for the tunneling probability."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .model import Constant, ModelParams, gap, spectral
from .quad import integrate_adaptive, integrate_real_line, integrate_tail

METHODS = ("ode", "quadrature_eq10", "closed_form_eq6", "lz_eq2", "asymptotic")

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass
class TunnelingResult:
    T: float
    method: str
    tolerance_achieved: float = 0.0
    cost: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method tag {self.method!r}")


def q_closed(x: float) -> float:
    """Dephasing shape function ``Q(x)``, ``x = hbar*gamma/g0``."""
    if x < 0:
        raise ValueError("Q is defined for x >= 0")
    r = math.sqrt(1.0 + x * x)
    return 0.5 * math.pi * x * (2.0 + r) / (r * (r + 1.0) ** 2)


def q_integrand(t: float, x: float) -> float:
    u = t * t + 1.0
    return 1.0 / (u * u * (u + x * x))


def q_quadrature(x: float, tol: float = 1e-11) -> float:
    """``Q(x) = x * int_R (t^2+1)^-2 (t^2+1+x^2)^-1 dt`` by adaptive quadrature."""
    if x < 0:
        raise ValueError("Q is defined for x >= 0")
    if x == 0:
        return 0.0
    # scale tolerance so the product x * integral meets tol
    value, _ = integrate_real_line(lambda t: q_integrand(t, x), tol / max(x, 1.0))
    return x * value


def q_maximum(lo: float = 0.5, hi: float = 2.0, tol: float = 1e-8) -> tuple[float, float]:
    """Golden-section search for the maximum of ``q_closed`` on ``[lo, hi]``."""
    a, b = lo, hi
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = q_closed(c), q_closed(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = q_closed(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = q_closed(d)
    x = 0.5 * (a + b)
    return x, q_closed(x)


def asymptotic_weak(x: float) -> float:
    """Small-``x`` form of Q: ``3 pi x / 8``."""
    return 3.0 * math.pi / 8.0 * x


def asymptotic_strong(x: float) -> float:
    """Large-``x`` (Zeno) form of Q: ``pi / (2 x)``."""
    return math.pi / (2.0 * x)


def lz_probability(g0: float, eps: float, hbar: float = 1.0) -> float:
    if not eps > 0:
        raise ValueError("eps must be > 0")
    if g0 < 0:
        raise ValueError("g0 must be >= 0")
    return math.exp(-math.pi * g0 * g0 / (2.0 * hbar * eps))


def _require_constant(p: ModelParams) -> float:
    if not isinstance(p.gamma, Constant):
        raise ValueError("this formula needs a constant dephasing rate")
    return p.gamma.value


def eq6_slope(p: ModelParams) -> float:
    """Leading-order ``T / eps`` on the whole line, constant gamma."""
    gamma = _require_constant(p)
    return p.hbar / (2.0 * p.g0**2) * q_closed(p.hbar * gamma / p.g0)


def dephasing_tunneling_eq6(p: ModelParams, eps: float) -> float:
    if not eps > 0:
        raise ValueError("eps must be > 0")
    return eps * eq6_slope(p)


def numerator_closed(s: float, p: ModelParams) -> float:
    """``tr(P+ dP-^2 P+) = g0^2 / (4 g^4)``."""
    g = gap(s, p)
    return p.g0**2 / (4.0 * g**4)


def numerator_numeric(s: float, p: ModelParams) -> float:
    sd = spectral(s, p)
    m = sd.P_plus @ sd.dP_minus @ sd.dP_minus @ sd.P_plus
    return float((m[0, 0] + m[1, 1]).real)


def eq10_integrand(s: float, p: ModelParams, numerator: str = "closed") -> float:
    """Integrand of the windowed formula per unit ``eps``.

    ``2 hbar^2 gamma num / (g^2 + hbar^2 gamma^2)``; with ``G = hbar*gamma``
    this is ``2 hbar G num / (g^2 + G^2)``.
    """
    rate = p.rate(s)
    if rate == 0.0:
        return 0.0
    num = numerator_closed(s, p) if numerator == "closed" else numerator_numeric(s, p)
    g = gap(s, p)
    return 2.0 * p.hbar * rate * num / (g * g + rate * rate)


def _pieces(p: ModelParams, s0: float, s1: float) -> list[float]:
    cuts = [s0]
    if not isinstance(p.gamma, Constant):
        cuts += [x for x, _ in p.gamma.points if s0 < x < s1]
    # the integrand peaks at the crossing; splitting there helps the bisection
    if s0 < 0.0 < s1 and 0.0 not in cuts:
        cuts.append(0.0)
    cuts.append(s1)
    return sorted(cuts)


def eq10_slope(p: ModelParams, s0: float, s1: float, tol: float = 1e-13,
               numerator: str = "closed") -> tuple[float, float, int]:
    """``T / eps`` from the windowed formula: ``(value, error, n_evals)``."""
    if numerator not in ("closed", "numeric"):
        raise ValueError("numerator must be 'closed' or 'numeric'")
    if not s1 > s0:
        raise ValueError("need s0 < s1")
    evals = 0

    def f(s):
        nonlocal evals
        evals += 1
        return eq10_integrand(s, p, numerator)

    cuts = _pieces(p, s0, s1)
    total = err = 0.0
    for a, b in zip(cuts, cuts[1:]):
        share = tol * (b - a) / (s1 - s0)
        v, e = integrate_adaptive(f, a, b, share)
        total += v
        err += e
    return total, err, evals


def finite_interval_tunneling_eq10(p: ModelParams, eps: float, s0: float, s1: float,
                                   tol: float = 1e-13, numerator: str = "closed") -> TunnelingResult:
    """Leading-order tunneling accumulated over ``[s0, s1]``."""
    if not eps > 0:
        raise ValueError("eps must be > 0")
    slope, err, evals = eq10_slope(p, s0, s1, tol, numerator)
    return TunnelingResult(eps * slope, "quadrature_eq10", eps * err, {"evals": evals})


def eq10_tail_slope(p: ModelParams, s0: float, s1: float, tol: float = 1e-14) -> float:
    """Per-``eps`` contribution of ``s < s0`` and ``s > s1`` (gamma clamped there)."""

    def right(s):
        return eq10_integrand(s, p)

    def left(s):
        return eq10_integrand(-s, p)

    def half_line(f, start):
        if start > 0:
            return integrate_tail(f, start, tol)[0]
        head, _ = integrate_adaptive(f, start, 1.0, tol)
        return head + integrate_tail(f, 1.0, tol)[0]

    return half_line(right, s1) + half_line(left, -s0)


def predict(g0: float, gamma: float, eps: float, hbar: float = 1.0) -> dict:
    """All analytic predictions for a constant-rate model, plus regime flags."""
    p = ModelParams(g0, Constant(gamma), hbar)
    x = hbar * gamma / g0
    out = {
        "x": x,
        "T_lz": lz_probability(g0, eps, hbar),
        "T_eq6": dephasing_tunneling_eq6(p, eps),
        "T_weak": eps * hbar / (2 * g0**2) * asymptotic_weak(x) if x > 0 else 0.0,
        "T_strong": eps * hbar / (2 * g0**2) * asymptotic_strong(x) if x > 0 else math.inf,
        "regime": "weak" if x < 1 else "strong",
        "adiabatic_warning": eps >= hbar * gamma**2,
    }
    return out


def q_curve(xmin: float, xmax: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    xs = np.linspace(xmin, xmax, n)
    return xs, np.array([q_closed(float(x)) for x in xs])
