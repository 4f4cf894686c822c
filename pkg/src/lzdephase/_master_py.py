"""Pure-Python master-equation kernel (fallback for ``_master_ext``)."""
from __future__ import annotations

import bisect
import math

import numpy as np

from .errors import StepSizeUnderflow, TooManyEvaluations
from .odeint import IntegratorConfig, integrate

OK, UNDERFLOW, MAX_EVALS = 0, 1, 2


def make_rhs(g0, hbar_eps, gx, gy):
    """Scalar right-hand side of ``d vec(rho)/ds = L_s(rho) / (hbar eps)``.

    ``gy`` holds ``hbar * gamma`` at breakpoints ``gx`` (clamped outside).
    """
    gx = [float(v) for v in gx]
    gy = [float(v) for v in gy]
    n = len(gx)
    inv_e = 1.0 / hbar_eps
    hx = 0.5 * g0

    def rate(s):
        if s <= gx[0]:
            return gy[0]
        if s >= gx[n - 1]:
            return gy[n - 1]
        i = bisect.bisect_right(gx, s)
        w = (s - gx[i - 1]) / (gx[i] - gx[i - 1])
        return gy[i - 1] + w * (gy[i] - gy[i - 1])

    def rhs(s, y):
        a, b, c, d = complex(y[0]), complex(y[1]), complex(y[2]), complex(y[3])
        g = math.sqrt(s * s + g0 * g0)
        x = g0 / g
        z = s / g
        gam = 0.5 * rate(s)
        hz = 0.5 * s
        # -i [H, rho]
        c11 = hx * (b - c)
        c12 = 2.0 * hz * c + hx * (d - a)
        c21 = hx * (a - d) - 2.0 * hz * b
        # N rho N with N the unit Bloch operator
        xz = x * z
        xx = x * x
        zz = z * z
        bc = b + c
        ad = a - d
        n11 = zz * a + xz * bc + xx * d
        n21 = xz * ad - zz * b + xx * c
        n12 = xz * ad + xx * b - zz * c
        n22 = xx * a - xz * bc + zz * d
        return np.array((
            (-1j * c11 - gam * (a - n11)) * inv_e,
            (-1j * c21 - gam * (b - n21)) * inv_e,
            (-1j * c12 - gam * (c - n12)) * inv_e,
            (1j * c11 - gam * (d - n22)) * inv_e,
        ))

    return rhs


def run_master(g0, hbar_eps, gx, gy, y0, s0, s1, rel_tol, abs_tol,
               max_step, min_step, max_evals, t_eval):
    """Same contract as ``_master_ext.run_master``.

    Returns ``(status, out, n_accepted, n_rejected, n_evals, s_last, y_last)``.
    """
    cfg = IntegratorConfig(rel_tol, abs_tol, max_step, min_step, max_evals)
    rhs = make_rhs(g0, hbar_eps, gx, gy)
    try:
        traj = integrate(rhs, y0, s0, s1, cfg, t_eval=t_eval)
    except StepSizeUnderflow as exc:
        return UNDERFLOW, None, 0, 0, 0, exc.s, exc.state
    except TooManyEvaluations as exc:
        return MAX_EVALS, None, 0, 0, max_evals, exc.s, exc.state
    return OK, traj.y, traj.n_accepted, traj.n_rejected, traj.n_evals, s1, traj.y[-1]
