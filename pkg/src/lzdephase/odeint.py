"""Adaptive Dormand-Prince 5(4) integrator for complex vector ODEs.

Pure numpy; works with any ``rhs(s, y) -> dy``. The master equation has a
fused fast path in :mod:`lzdephase.master` that follows the same stepping
rules.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import StepSizeUnderflow, TooManyEvaluations

# Dormand & Prince (1980) tableau.
C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
B = A[6] + (0.0,)
# 5th minus embedded 4th order weights
E = (71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40)
# continuous extension (Hairer, Norsett & Wanner, dopri5)
D = (
    -12715105075 / 11282082432, 0.0, 87487479700 / 32700410799,
    -10690763975 / 1880347072, 701980252875 / 199316789632,
    -1453857185 / 822651844, 69997945 / 29380423,
)

SAFETY = 0.9
MIN_FACTOR = 0.2
MAX_FACTOR = 5.0


@dataclass(frozen=True)
class IntegratorConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_step: float = math.inf
    min_step: float = 1e-12
    max_evals: int = 50_000_000

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("tolerances must be positive")
        if not (0 < self.min_step <= self.max_step):
            raise ValueError("need 0 < min_step <= max_step")
        if self.max_evals < 1:
            raise ValueError("max_evals must be >= 1")


@dataclass
class Trajectory:
    """Samples ``(s[i], y[i])`` plus step statistics."""

    s: np.ndarray
    y: np.ndarray
    n_accepted: int = 0
    n_rejected: int = 0
    n_evals: int = 0

    @property
    def samples(self):
        return list(zip(self.s, self.y))

    @property
    def final(self) -> np.ndarray:
        return self.y[-1]


def error_norm(err, y_old, y_new, rel_tol, abs_tol) -> float:
    scale = abs_tol + rel_tol * np.maximum(np.abs(y_old), np.abs(y_new))
    return float(np.max(np.abs(err) / scale))


def initial_step(rhs, s0, y0, f0, direction_span, rel_tol, abs_tol) -> float:
    """Starting step from Hairer, Norsett & Wanner (II.4), order 5."""
    scale = abs_tol + rel_tol * np.abs(y0)
    d0 = float(np.sqrt(np.mean(np.abs(y0 / scale) ** 2)))
    d1 = float(np.sqrt(np.mean(np.abs(f0 / scale) ** 2)))
    h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
    h0 = min(h0, direction_span)
    y1 = y0 + h0 * f0
    f1 = rhs(s0 + h0, y1)
    d2 = float(np.sqrt(np.mean(np.abs((f1 - f0) / scale) ** 2))) / h0
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** (1 / 5)
    return min(100 * h0, h1, direction_span)


def dense_eval(theta, h, y_old, y_new, k1, k7, rc5):
    ydiff = y_new - y_old
    bspl = h * k1 - ydiff
    t1 = 1.0 - theta
    return y_old + theta * (ydiff + t1 * (bspl + theta * ((ydiff - h * k7 - bspl) + t1 * rc5)))


def integrate(
    rhs: Callable[[float, np.ndarray], np.ndarray],
    y0,
    s0: float,
    s1: float,
    cfg: IntegratorConfig | None = None,
    t_eval: Sequence[float] | None = None,
) -> Trajectory:
    """Integrate ``dy/ds = rhs(s, y)`` from ``s0`` to ``s1``.

    Parameters
    ----------
    t_eval
        Sorted sample points inside ``[s0, s1]``, filled by the 4th-order
        continuous extension. ``None`` keeps every accepted step.

    Raises
    ------
    StepSizeUnderflow, TooManyEvaluations
        Both carry the last accepted ``(s, state)``.
    """
    cfg = cfg or IntegratorConfig()
    if not s1 > s0:
        raise ValueError("integrate requires s1 > s0")
    y = np.array(y0, dtype=complex).ravel()
    span = s1 - s0

    if t_eval is not None:
        t_eval = np.asarray(t_eval, dtype=float)
        if t_eval.size and (t_eval[0] < s0 or t_eval[-1] > s1 or np.any(np.diff(t_eval) <= 0)):
            raise ValueError("t_eval must be strictly increasing inside [s0, s1]")
        out_s = t_eval
        out_y = np.empty((t_eval.size, y.size), dtype=complex)
        j = 0
        while j < t_eval.size and t_eval[j] == s0:
            out_y[j] = y
            j += 1
    else:
        hist_s, hist_y = [s0], [y.copy()]

    s = s0
    k1 = np.asarray(rhs(s, y), dtype=complex)
    n_evals = 1
    h = min(initial_step(rhs, s, y, k1, span, cfg.rel_tol, cfg.abs_tol), cfg.max_step)
    n_evals += 1
    h = max(h, cfg.min_step)
    n_acc = n_rej = 0
    k = [k1] + [None] * 6

    while s < s1:
        last = False
        if s + h >= s1 or (s1 - (s + h)) < cfg.min_step:
            h = s1 - s
            last = True
        if n_evals + 6 > cfg.max_evals:
            raise TooManyEvaluations(f"max_evals={cfg.max_evals} exceeded at s={s}", s, y.copy())
        for i in range(1, 7):
            yi = y.copy()
            for a, kj in zip(A[i], k):
                if a:
                    yi += h * a * kj
            k[i] = np.asarray(rhs(s + C[i] * h, yi), dtype=complex)
        n_evals += 6
        y_new = yi  # stage 7 argument equals the 5th-order solution (FSAL)
        err = h * sum(e * kj for e, kj in zip(E, k) if e)
        en = error_norm(err, y, y_new, cfg.rel_tol, cfg.abs_tol)
        if not math.isfinite(en):
            en = math.inf

        if en <= 1.0:
            s_new = s1 if last else s + h
            if t_eval is not None:
                rc5 = h * sum(d * kj for d, kj in zip(D, k) if d)
                while j < out_s.size and out_s[j] <= s_new:
                    if out_s[j] == s_new:
                        out_y[j] = y_new
                    else:
                        out_y[j] = dense_eval((out_s[j] - s) / h, h, y, y_new, k[0], k[6], rc5)
                    j += 1
            else:
                hist_s.append(s_new)
                hist_y.append(y_new.copy())
            s, y = s_new, y_new
            k[0] = k[6]
            n_acc += 1
            fac = MAX_FACTOR if en == 0.0 else min(MAX_FACTOR, max(MIN_FACTOR, SAFETY * en ** -0.2))
            h = min(h * fac, cfg.max_step)
        else:
            n_rej += 1
            h *= MIN_FACTOR if en == math.inf else max(MIN_FACTOR, SAFETY * en ** -0.2)
            if h < cfg.min_step:
                raise StepSizeUnderflow(f"step {h:.3e} below min_step at s={s}", s, y.copy())

    if t_eval is None:
        out_s, out_y = np.array(hist_s), np.array(hist_y)
    return Trajectory(out_s, out_y, n_acc, n_rej, n_evals)
