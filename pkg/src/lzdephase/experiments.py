"""Drivers tying the master-equation dynamics to the analytic formulas."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NumericalQualityError, StepSizeUnderflow, TooManyEvaluations
from .formulas import TunnelingResult
from .linalg2 import unvec, vec
from .lindblad import apply_L, transport_X
from .master import DEFAULT_BACKEND, get_backend
from .model import ModelParams, profile_arrays, spectral
from .odeint import IntegratorConfig, integrate

TRACE_TOL = 1e-9
HERMITIAN_TOL = 1e-9
POSITIVITY_TOL = 1e-8


@dataclass(frozen=True)
class RunSpec:
    p: ModelParams
    eps: float
    s0: float
    s1: float
    cfg: IntegratorConfig = field(default_factory=IntegratorConfig)
    sample_count: int = 2001
    backend: str | None = None

    def __post_init__(self):
        if not self.eps > 0:
            raise ValueError(f"eps must be > 0, got {self.eps!r}")
        if self.s1 < self.s0:
            raise ValueError("need s0 <= s1")
        if self.sample_count < 2:
            raise ValueError("sample_count must be >= 2")


@dataclass
class RhoTrajectory:
    s: np.ndarray
    rho: np.ndarray  # (n, 2, 2)
    n_accepted: int = 0
    n_rejected: int = 0
    n_evals: int = 0
    backend: str = ""

    def expectation(self, ops) -> np.ndarray:
        """``tr(A(s_i) rho_i)`` for a sequence of matrices ``ops``."""
        ops = np.asarray(ops)
        return np.einsum("nij,nji->n", ops, self.rho)


@dataclass
class InvariantReport:
    lhs: float
    rhs: float
    residual: float
    terms: dict


@dataclass
class ContractionReport:
    s: np.ndarray
    norms: np.ndarray
    max_increase: float
    nonincreasing: bool


def _from_vec(y: np.ndarray) -> np.ndarray:
    return y.reshape(-1, 2, 2).transpose(0, 2, 1).copy()


def state_defects(rho: np.ndarray) -> dict:
    """Trace, Hermiticity and positivity defects over a stack of 2x2 matrices."""
    tr = rho[:, 0, 0] + rho[:, 1, 1]
    herm = np.abs(rho - rho.conj().transpose(0, 2, 1)).max(axis=(1, 2))
    h = 0.5 * (rho + rho.conj().transpose(0, 2, 1))
    a0 = 0.5 * (h[:, 0, 0] + h[:, 1, 1]).real
    r = np.sqrt(np.abs(0.5 * (h[:, 0, 0] - h[:, 1, 1])) ** 2 + np.abs(h[:, 0, 1]) ** 2)
    return {
        "trace": float(np.max(np.abs(tr - 1.0))),
        "hermiticity": float(np.max(herm)),
        "min_eigenvalue": float(np.min(a0 - r)),
    }


def _reference_run(spec: RunSpec, y0, t_eval):
    p, e = spec.p, spec.p.hbar * spec.eps

    def rhs(s, y):
        return vec(apply_L(s, unvec(y), p)) / e

    traj = integrate(rhs, y0, spec.s0, spec.s1, spec.cfg, t_eval=t_eval)
    return traj.y, traj.n_accepted, traj.n_rejected, traj.n_evals


def evolve_rho(spec: RunSpec, rho0=None, validate: bool = True) -> RhoTrajectory:
    """Integrate ``hbar eps drho/ds = L_s(rho)`` and keep equally spaced samples.

    ``rho0`` defaults to the lower projection ``P-(s0)``. ``backend`` on the
    run may be ``"cython"``, ``"python"`` or ``"reference"``; the last runs
    the generic integrator on the matrix form of the generator.
    """
    p = spec.p
    if rho0 is None:
        rho0 = spectral(spec.s0, p).P_minus
    rho0 = np.asarray(rho0, dtype=complex)
    backend = spec.backend or DEFAULT_BACKEND
    if spec.s1 == spec.s0:
        return RhoTrajectory(np.array([spec.s0]), rho0[None].copy(), backend=backend)

    t_eval = np.linspace(spec.s0, spec.s1, spec.sample_count)
    y0 = vec(rho0)
    if backend == "reference":
        out, n_acc, n_rej, n_evals = _reference_run(spec, y0, t_eval)
    else:
        gx, gy = profile_arrays(p.gamma)
        cfg = spec.cfg
        status, out, n_acc, n_rej, n_evals, s_last, y_last = get_backend(backend).run_master(
            p.g0, p.hbar * spec.eps, gx, p.hbar * gy, y0, spec.s0, spec.s1,
            cfg.rel_tol, cfg.abs_tol, cfg.max_step, cfg.min_step, cfg.max_evals, t_eval,
        )
        if status == 1:
            raise StepSizeUnderflow(f"step size fell below {cfg.min_step} at s={s_last}",
                                    s_last, unvec(y_last))
        if status == 2:
            raise TooManyEvaluations(f"more than {cfg.max_evals} evaluations, stopped at s={s_last}",
                                     s_last, unvec(y_last))
    traj = RhoTrajectory(t_eval, _from_vec(out), n_acc, n_rej, n_evals, backend)
    if validate:
        d = state_defects(traj.rho)
        if (d["trace"] > TRACE_TOL or d["hermiticity"] > HERMITIAN_TOL
                or d["min_eigenvalue"] < -POSITIVITY_TOL):
            raise NumericalQualityError("density matrix left the physical set", d)
    return traj


def tunneling_from(traj: RhoTrajectory, p: ModelParams) -> float:
    P = spectral(float(traj.s[-1]), p).P_plus
    return float(np.trace(P @ traj.rho[-1]).real)


def upper_population(traj: RhoTrajectory, p: ModelParams) -> np.ndarray:
    """``tr(rho P+)`` along the trajectory."""
    return traj.expectation([spectral(float(s), p).P_plus for s in traj.s]).real


def measure_tunneling(spec: RunSpec) -> TunnelingResult:
    """``tr(rho(s1) P+(s1))`` for ``rho(s0) = P-(s0)``."""
    traj = evolve_rho(spec)
    return TunnelingResult(
        tunneling_from(traj, spec.p), "ode", spec.cfg.rel_tol,
        {"accepted": traj.n_accepted, "rejected": traj.n_rejected,
         "evals": traj.n_evals, "backend": traj.backend},
    )


def slope_extrapolate(points) -> tuple[float, float]:
    """Least-squares fit ``T = a eps + b eps^2``; returns ``(a, b)``."""
    pts = [(float(e), float(t)) for e, t in points]
    if len({e for e, _ in pts}) < 2:
        raise ValueError("slope_extrapolate needs at least two distinct eps values")
    eps = np.array([e for e, _ in pts])
    T = np.array([t for _, t in pts])
    design = np.column_stack([eps, eps**2])
    (a, b), *_ = np.linalg.lstsq(design, T, rcond=None)
    return float(a), float(b)


def simpson_weights(x: np.ndarray) -> np.ndarray:
    """Composite Simpson weights on an equally spaced grid (3/8 rule closes even counts)."""
    n = x.size
    if n < 2:
        return np.zeros(n)
    h = (x[-1] - x[0]) / (n - 1)
    w = np.zeros(n)
    if n == 2:
        w[:] = h / 2
        return w
    m = n if n % 2 == 1 else n - 3
    if m >= 3:
        w[0:m:2] += 2 * h / 3
        w[1:m:2] += 4 * h / 3
        w[0] -= h / 3
        w[m - 1] -= h / 3
    if m != n:
        w[m - 1:] += np.array([3, 9, 9, 3]) * h / 8
    return w


def transport_derivative(s: float, p: ModelParams, which: str = "plus") -> np.ndarray:
    """``dX/ds`` by central differences, one Richardson refinement."""
    h = 1e-5 * (1.0 + abs(s))

    def central(step):
        return (transport_X(s + step, p, which) - transport_X(s - step, p, which)) / (2 * step)

    return (4.0 * central(h / 2) - central(h)) / 3.0


def verify_invariant_identity(spec: RunSpec, A: str = "P_plus", traj: RhoTrajectory | None = None
                              ) -> InvariantReport:
    """Check ``tr(A rho)|  =  E tr(X rho)|  -  E int tr(dX/ds rho) ds`` with ``E = hbar eps``.

    For ``A = P_plus`` the transport solution is ``transport_X(.., "plus")``;
    for ``A = P_minus`` it is its negative, since ``dP-/ds = -dP+/ds``.
    """
    if A not in ("P_plus", "P_minus"):
        raise ValueError("A must be 'P_plus' or 'P_minus'")
    p = spec.p
    traj = traj or evolve_rho(spec)
    sign = 1.0 if A == "P_plus" else -1.0
    E = p.hbar * spec.eps
    s = traj.s

    def a_of(x):
        sd = spectral(float(x), p)
        return sd.P_plus if A == "P_plus" else sd.P_minus

    def tr(m, r):
        return complex(np.trace(m @ r))

    lhs = tr(a_of(s[-1]), traj.rho[-1]) - tr(a_of(s[0]), traj.rho[0])
    boundary = E * sign * (tr(transport_X(float(s[-1]), p), traj.rho[-1])
                           - tr(transport_X(float(s[0]), p), traj.rho[0]))
    if s.size > 1:
        xdot = np.array([transport_derivative(float(x), p) for x in s])
        integrand = sign * traj.expectation(xdot)
        integral = E * complex(simpson_weights(s) @ integrand)
    else:
        integral = 0.0
    rhs = boundary - integral
    return InvariantReport(
        lhs=lhs.real, rhs=rhs.real, residual=abs(lhs - rhs),
        terms={"boundary": boundary.real, "integral": integral.real,
               "lhs_imag": lhs.imag, "rhs_imag": rhs.imag},
    )


def adiabatic_residual(spec: RunSpec, traj: RhoTrajectory | None = None) -> float:
    """``max_s ||rho(s) - P-(s)||_HS`` for ``rho(s0) = P-(s0)``."""
    traj = traj or evolve_rho(spec)
    pm = np.array([spectral(float(x), spec.p).P_minus for x in traj.s])
    return float(np.max(np.sqrt(np.sum(np.abs(traj.rho - pm) ** 2, axis=(1, 2)))))


def hs_norms(traj: RhoTrajectory) -> np.ndarray:
    return np.sqrt(np.sum(np.abs(traj.rho) ** 2, axis=(1, 2)))


def contraction_check(spec: RunSpec, rho0, slack: float = 1e-9) -> ContractionReport:
    """Evolve a Hermitian ``rho0`` and check its HS norm never grows."""
    rho0 = np.asarray(rho0, dtype=complex)
    if not np.allclose(rho0, rho0.conj().T, atol=1e-14):
        raise ValueError("rho0 must be Hermitian")
    traj = evolve_rho(spec, rho0, validate=False)
    norms = hs_norms(traj)
    inc = float(np.max(np.diff(norms))) if norms.size > 1 else 0.0
    return ContractionReport(traj.s, norms, inc, inc <= slack)


def norm_derivative(s: float, rho: np.ndarray, spec: RunSpec) -> float:
    """``d/ds ||rho||^2 = 2 tr(rho L(rho)) / (hbar eps)`` for Hermitian ``rho``."""
    return 2.0 * float(np.trace(rho @ apply_L(s, rho, spec.p)).real) / (spec.p.hbar * spec.eps)
