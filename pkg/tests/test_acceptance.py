"""Acceptance criteria. Run ``pytest tests/test_acceptance.py -s`` or execute this file
directly to get one PASS/FAIL line per criterion."""
import functools
import math
import time

import numpy as np
import pytest

from lzdephase.experiments import (RunSpec, adiabatic_residual, evolve_rho, slope_extrapolate,
                                   tunneling_from, upper_population, verify_invariant_identity)
from lzdephase.formulas import (asymptotic_strong, asymptotic_weak, eq10_slope, eq10_tail_slope,
                                lz_probability, q_closed, q_maximum, q_quadrature)
from lzdephase.model import Constant, ModelParams
from lzdephase.odeint import IntegratorConfig
from lzdephase.verify import kernel_suite, transport_suite

CFG = IntegratorConfig(rel_tol=1e-10, abs_tol=1e-12)
SLOPE_EPS = (0.04, 0.02, 0.01)


@functools.lru_cache(maxsize=None)
def dephasing_run(gamma, eps, S=20.0):
    p = ModelParams(1.0, Constant(gamma))
    return p, evolve_rho(RunSpec(p, eps, -S, S, CFG))


def ac1():
    xs = np.logspace(-3, 2, 50)
    worst = max(abs(q_closed(x) - q_quadrature(x, 1e-11)) for x in xs)
    return worst <= 1e-9, f"max |Q_closed - Q_quad| = {worst:.2e} (tol 1e-9)", 1.0


def ac2():
    x, q = q_maximum(0.5, 2.0, 1e-8)
    return abs(x - 1.13693) <= 1e-4, f"argmax = {x:.7f}, Q = {q:.7f} (target 1.13693 +/- 1e-4)", 0.1


def ac3():
    weak = abs(q_closed(0.01) / asymptotic_weak(0.01) - 1)
    strong = abs(q_closed(100.0) / asymptotic_strong(100.0) - 1)
    ok = weak <= 1e-3 and strong <= 1e-3
    return ok, f"weak rel dev {weak:.2e}, Zeno rel dev {strong:.2e} (tol 1e-3)", 0.1


def ac4():
    p = ModelParams(1.0, Constant(0.0))
    devs = []
    for eps in (1.0, math.pi / 2):
        T = tunneling_from(evolve_rho(RunSpec(p, eps, -60.0, 60.0, CFG)), p)
        exact = lz_probability(1.0, eps)
        devs.append(abs(T - exact) / exact)
    return max(devs) <= 0.02, "rel dev vs exp(-pi g0^2/2eps): " + ", ".join(
        f"{d:.2e}" for d in devs) + " (tol 2%)", 60.0


def ac5():
    pts = []
    for eps in SLOPE_EPS:
        p, traj = dephasing_run(1.0, eps)
        pts.append((eps, tunneling_from(traj, p)))
    a, b = slope_extrapolate(pts)
    windowed, _, _ = eq10_slope(p, -20.0, 20.0)
    tail = eq10_tail_slope(p, -20.0, 20.0)
    dev_window = abs(a / windowed - 1)
    dev_full = abs((a + tail) / (q_closed(1.0) / 2) - 1)
    ok = dev_window <= 0.03 and dev_full <= 0.05
    return ok, (f"slope a = {a:.6f} (b = {b:.3f}); vs windowed {windowed:.6f}: {dev_window:.2e} "
                f"(tol 3%); a + tail vs Q(1)/2 = {q_closed(1.0) / 2:.6f}: {dev_full:.2e} (tol 5%)"), 300.0


def ac6():
    devs = []
    for gamma in (0.1, 1.0, 10.0):
        p, traj = dephasing_run(gamma, 0.01)
        windowed, _, _ = eq10_slope(p, -20.0, 20.0)
        devs.append(abs(tunneling_from(traj, p) / 0.01 / windowed - 1))
    return max(devs) <= 0.05, "T/eps vs windowed slope at x=0.1,1,10: " + ", ".join(
        f"{d:.2e}" for d in devs) + " (tol 5%)", 600.0


def ac7():
    p = ModelParams(1.0, Constant(1.0))
    r = verify_invariant_identity(RunSpec(p, 0.02, -10.0, 10.0, CFG))
    return r.residual <= 1e-6, (f"LHS = {r.lhs:.10f}, RHS = {r.rhs:.10f}, "
                                f"residual = {r.residual:.2e} (tol 1e-6)"), 60.0


def ac8():
    p = ModelParams(1.0, Constant(1.0))
    r1 = adiabatic_residual(RunSpec(p, 0.01, -10.0, 10.0, CFG))
    r2 = adiabatic_residual(RunSpec(p, 0.005, -10.0, 10.0, CFG))
    ratio = r1 / r2
    return 1.6 <= ratio <= 2.4, f"residual {r1:.4e} / {r2:.4e} = {ratio:.4f} (window [1.6, 2.4])", 120.0


def ac9():
    rng = np.random.default_rng(9)
    results = kernel_suite(rng, 1000) + transport_suite(rng, 1000)
    bad = [r for r in results if not r.passed]
    worst = ", ".join(f"{r.name}={r.worst:.1e}" for r in results)
    return not bad, f"{len(results)} properties x 1000 instances, {len(bad)} failing; {worst}", 5.0


def ac10():
    worst = 0.0
    for eps in SLOPE_EPS:
        p, traj = dephasing_run(1.0, eps)
        worst = min(worst, float(np.min(np.diff(upper_population(traj, p)))))
    return worst >= -1e-9, f"most negative step of tr(rho P+) = {worst:.2e} (slack 1e-9)", 300.0


CRITERIA = [
    ("AC1", "Q closed form vs quadrature", ac1),
    ("AC2", "Q maximum location", ac2),
    ("AC3", "weak / Zeno asymptotics", ac3),
    ("AC4", "gamma=0 Landau-Zener limit", ac4),
    ("AC5", "dephasing slope", ac5),
    ("AC6", "regime sweep", ac6),
    ("AC7", "adiabatic invariant identity", ac7),
    ("AC8", "adiabatic residual scaling", ac8),
    ("AC9", "structural property suite", ac9),
    ("AC10", "irreversibility", ac10),
]


def run_criterion(fn):
    t0 = time.perf_counter()
    ok, detail, budget = fn()
    elapsed = time.perf_counter() - t0
    ok_time = elapsed <= budget
    return ok and ok_time, f"{detail}; {elapsed:.2f} s (budget {budget:g} s)"


@pytest.mark.parametrize("tag, title, fn", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_acceptance(tag, title, fn, capsys):
    ok, line = run_criterion(fn)
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] {tag} {title}: {line}")
    assert ok, line


if __name__ == "__main__":
    failed = 0
    for tag, title, fn in CRITERIA:
        ok, line = run_criterion(fn)
        failed += not ok
        print(f"[{'PASS' if ok else 'FAIL'}] {tag} {title}: {line}")
    raise SystemExit(1 if failed else 0)
