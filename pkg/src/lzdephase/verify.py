"""Seeded randomized property suites behind ``lzdephase verify``."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .experiments import (RunSpec, adiabatic_residual, contraction_check,
                          verify_invariant_identity)
from .linalg2 import I2, hs_inner, hs_norm, unvec, vec
from .lindblad import apply_L, apply_Ladj, superop_matrix, transport_X
from .model import Constant, ModelParams, spectral
from .odeint import IntegratorConfig

SUITES = ("kernel", "transport", "invariant", "contraction", "residual")


@dataclass
class PropertyResult:
    suite: str
    name: str
    n: int
    worst: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.worst <= self.tol

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] {self.suite}/{self.name}: n={self.n} worst={self.worst:.3e} tol={self.tol:.1e}"


def random_params(rng: np.random.Generator) -> ModelParams:
    return ModelParams(
        g0=float(rng.uniform(0.1, 5.0)),
        gamma=Constant(float(rng.uniform(0.0, 5.0))),
        hbar=float(rng.uniform(0.5, 2.0)),
    )


def random_matrix(rng: np.random.Generator) -> np.ndarray:
    return rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))


def random_hermitian(rng: np.random.Generator) -> np.ndarray:
    a = random_matrix(rng)
    h = a + a.conj().T
    return h / hs_norm(h)


def multiset_distance(a, b) -> float:
    """Smallest max-deviation over all pairings of two equal-size multisets."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    return min(float(np.max(np.abs(a[list(perm)] - b)))
               for perm in itertools.permutations(range(a.size)))


def _collect(suite, checks: dict[str, tuple[float, list]], n) -> list[PropertyResult]:
    return [PropertyResult(suite, name, n, max(vals) if vals else 0.0, tol)
            for name, (tol, vals) in checks.items()]


def kernel_suite(rng: np.random.Generator, n: int = 1000) -> list[PropertyResult]:
    checks = {
        "stationary_projections": (1e-13, []),
        "stationary_mixture": (1e-13, []),
        "adjoint_kills_P_plus_and_I": (1e-13, []),
        "trace_annihilation": (1e-14, []),
        "hermiticity_preserving": (1e-13, []),
        "adjointness": (1e-12, []),
        "dissipativity": (1e-14, []),
        "dissipativity_imag": (1e-14, []),
        "superop_consistency": (1e-13, []),
        "superop_trace_row": (1e-13, []),
        "superop_spectrum": (1e-12, []),
    }
    for _ in range(n):
        p = random_params(rng)
        s = float(rng.uniform(-10.0, 10.0))
        sd = spectral(s, p)
        scale = max(1.0, abs(s), p.g0, p.rate(s))
        a, b = rng.normal(size=2)
        checks["stationary_projections"][1].append(
            max(hs_norm(apply_L(s, sd.P_plus, p)), hs_norm(apply_L(s, sd.P_minus, p))) / scale)
        checks["stationary_mixture"][1].append(
            hs_norm(apply_L(s, a * sd.P_minus + b * sd.P_plus, p)) / scale)
        checks["adjoint_kills_P_plus_and_I"][1].append(
            max(hs_norm(apply_Ladj(s, sd.P_plus, p)), hs_norm(apply_Ladj(s, I2, p))) / scale)
        rho = random_hermitian(rng)
        out = apply_L(s, rho, p)
        checks["trace_annihilation"][1].append(abs(out[0, 0] + out[1, 1]) / scale)
        checks["hermiticity_preserving"][1].append(hs_norm(out - out.conj().T) / scale)
        A = random_hermitian(rng)
        checks["adjointness"][1].append(
            abs(hs_inner(apply_Ladj(s, A, p), rho) - hs_inner(A, apply_L(s, rho, p))) / scale)
        diss = complex(np.trace(rho @ out))
        checks["dissipativity"][1].append(max(diss.real, 0.0) / scale)
        checks["dissipativity_imag"][1].append(abs(diss.imag) / scale)
        m = superop_matrix(s, p)
        r = random_matrix(rng)
        checks["superop_consistency"][1].append(
            float(np.max(np.abs(m @ vec(r) - vec(apply_L(s, r, p))))) / scale)
        checks["superop_trace_row"][1].append(float(np.max(np.abs(vec(I2).conj() @ m))) / scale)
        G, g = p.rate(s), sd.g
        checks["superop_spectrum"][1].append(
            multiset_distance(np.linalg.eigvals(m), [0, 0, -G - 1j * g, -G + 1j * g]) / scale)
    return _collect("kernel", checks, n)


def transport_suite(rng: np.random.Generator, n: int = 1000) -> list[PropertyResult]:
    checks = {
        "numerator_identity": (1e-13, []),
        "projector_derivative_offdiagonal": (1e-13, []),
        "X_offdiagonal": (1e-13, []),
        "adjoint_transport_residual": (1e-12, []),
        "forward_transport_residual": (1e-12, []),
        "eigen_relation": (1e-12, []),
    }
    for _ in range(n):
        p = random_params(rng)
        s = float(rng.uniform(-50.0, 50.0))
        sd = spectral(s, p)
        num = sd.P_plus @ sd.dP_minus @ sd.dP_minus @ sd.P_plus
        checks["numerator_identity"][1].append(
            abs((num[0, 0] + num[1, 1]).real - p.g0**2 / (4 * sd.g**4)))
        d = sd.dP_plus
        checks["projector_derivative_offdiagonal"][1].append(
            hs_norm(d - sd.P_minus @ d @ sd.P_plus - sd.P_plus @ d @ sd.P_minus))
        X = transport_X(s, p, "plus")
        Xm = transport_X(s, p, "minus")
        checks["X_offdiagonal"][1].append(max(
            hs_norm(sd.P_plus @ X @ sd.P_plus), hs_norm(sd.P_minus @ X @ sd.P_minus),
            hs_norm(sd.P_plus @ Xm @ sd.P_plus), hs_norm(sd.P_minus @ Xm @ sd.P_minus)))
        checks["adjoint_transport_residual"][1].append(hs_norm(apply_Ladj(s, X, p) - sd.dP_plus))
        checks["forward_transport_residual"][1].append(hs_norm(apply_L(s, Xm, p) - sd.dP_minus))
        B = random_matrix(rng)
        scale = max(1.0, abs(s), p.g0, p.rate(s))
        worst = 0.0
        for (Pk, ek), (Pj, ej) in (((sd.P_plus, sd.e_plus), (sd.P_minus, sd.e_minus)),
                                   ((sd.P_minus, sd.e_minus), (sd.P_plus, sd.e_plus))):
            blk = Pk @ B @ Pj
            want = 1j * (ek - ej + 1j * p.rate(s)) * blk
            worst = max(worst, hs_norm(apply_Ladj(s, blk, p) - want) / scale)
        checks["eigen_relation"][1].append(worst)
    return _collect("transport", checks, n)


def _dynamic_params(rng):
    return ModelParams(float(rng.uniform(0.7, 1.5)), Constant(float(rng.uniform(0.0, 2.0))))


def invariant_suite(rng: np.random.Generator, n: int = 3) -> list[PropertyResult]:
    worst = []
    for _ in range(n):
        p = _dynamic_params(rng)
        spec = RunSpec(p, float(rng.uniform(0.02, 0.05)), -10.0, 10.0)
        for A in ("P_plus", "P_minus"):
            worst.append(verify_invariant_identity(spec, A).residual)
    return [PropertyResult("invariant", "identity_residual", len(worst), max(worst), 1e-6)]


def contraction_suite(rng: np.random.Generator, n: int = 3) -> list[PropertyResult]:
    worst = []
    for _ in range(n):
        p = _dynamic_params(rng)
        spec = RunSpec(p, float(rng.uniform(0.02, 0.1)), -5.0, 5.0, sample_count=501)
        worst.append(max(contraction_check(spec, random_hermitian(rng)).max_increase, 0.0))
    return [PropertyResult("contraction", "hs_norm_nonincreasing", n, max(worst), 1e-9)]


def residual_suite(rng: np.random.Generator, n: int = 2) -> list[PropertyResult]:
    """Adiabatic residual halves with eps; reported as distance of the ratio from 2."""
    dev = []
    for _ in range(n):
        p = ModelParams(float(rng.uniform(0.8, 1.2)), Constant(float(rng.uniform(0.5, 1.5))))
        eps = float(rng.uniform(0.005, 0.01))
        r1 = adiabatic_residual(RunSpec(p, 2 * eps, -10.0, 10.0))
        r2 = adiabatic_residual(RunSpec(p, eps, -10.0, 10.0))
        dev.append(abs(r1 / r2 - 2.0))
    return [PropertyResult("residual", "linear_eps_scaling", n, max(dev), 0.4)]


RUNNERS: dict[str, Callable] = {
    "kernel": kernel_suite,
    "transport": transport_suite,
    "invariant": invariant_suite,
    "contraction": contraction_suite,
    "residual": residual_suite,
}


def run_suite(name: str, seed: int = 0) -> list[PropertyResult]:
    names = SUITES if name == "all" else (name,)
    results = []
    for i, nm in enumerate(names):
        if nm not in RUNNERS:
            raise ValueError(f"unknown suite {nm!r}")
        rng = np.random.default_rng([seed, i])
        results.extend(RUNNERS[nm](rng))
    return results
