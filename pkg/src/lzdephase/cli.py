"""Command-line front end.

Exit codes: 0 success, 1 validation error, 2 numerical failure,
3 verification-suite failure.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import config as config_mod
from .errors import ConfigError, LZDephaseError
from .experiments import evolve_rho, tunneling_from
from .formulas import (dephasing_tunneling_eq6, finite_interval_tunneling_eq10, predict,
                       q_closed, q_maximum)
from .model import Constant, spectral
from .svgplot import line_plot
from .sweep import SWEEP_HEADER, fmt, gamma_label, row_to_csv, run_sweep
from .verify import SUITES, run_suite

EXIT_OK, EXIT_VALIDATION, EXIT_NUMERICAL, EXIT_VERIFY = 0, 1, 2, 3


def _write(path, text) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(text)


def cmd_qcurve(args) -> int:
    if not (0 <= args.xmin < args.xmax):
        print("error: need 0 <= xmin < xmax", file=sys.stderr)
        return EXIT_VALIDATION
    if args.n < 2:
        print("error: need n >= 2", file=sys.stderr)
        return EXIT_VALIDATION
    xs = np.linspace(args.xmin, args.xmax, args.n)
    qs = [q_closed(float(x)) for x in xs]
    x_max, q_max = q_maximum()
    if args.format == "csv":
        text = "x,Q\n" + "".join(f"{fmt(float(x))},{fmt(q)}\n" for x, q in zip(xs, qs))
    elif args.format == "json":
        text = json.dumps({"x": [float(x) for x in xs], "Q": qs,
                           "maximum": {"x": x_max, "Q": q_max}}, indent=1) + "\n"
    else:
        marker = (x_max, q_max, f"max at x={x_max:.5f}") if args.xmin <= x_max <= args.xmax else None
        text = line_plot([float(x) for x in xs], qs, title="Q(x)",
                         xlabel="x = hbar gamma / g0", ylabel="Q", marker=marker)
    try:
        _write(args.out, text)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
        return EXIT_VALIDATION
    print(f"wrote {args.n} points to {args.out}; maximum Q({x_max:.6f}) = {q_max:.6f}")
    return EXIT_OK


def cmd_simulate(args) -> int:
    spec = config_mod.build_spec(config_mod.load(args.config))
    p = spec.p
    traj = evolve_rho(spec)
    T = tunneling_from(traj, p)
    t10 = finite_interval_tunneling_eq10(p, spec.eps, spec.s0, spec.s1).T
    t6 = dephasing_tunneling_eq6(p, spec.eps) if isinstance(p.gamma, Constant) else None
    row = {"g0": p.g0, "gamma": gamma_label(p.gamma), "eps": spec.eps, "s0": spec.s0,
           "s1": spec.s1, "T_ode": T, "T_eq10": t10, "T_eq6": t6,
           "rel_dev_ode_eq10": (T - t10) / t10 if t10 > 0 else None, "status": "ok"}
    lines = [f"# {k}={fmt(row[k])}" for k in SWEEP_HEADER]
    lines += [f"# accepted={traj.n_accepted}", f"# rejected={traj.n_rejected}",
              f"# evals={traj.n_evals}", f"# backend={traj.backend}", "s,P_plus,offdiag_norm"]
    for s, rho in zip(traj.s, traj.rho):
        sd = spectral(float(s), p)
        pop = float(np.trace(sd.P_plus @ rho).real)
        off = sd.P_plus @ rho @ sd.P_minus + sd.P_minus @ rho @ sd.P_plus
        lines.append(f"{fmt(float(s))},{fmt(pop)},{fmt(float(np.linalg.norm(off)))}")
    try:
        _write(args.out, "\n".join(lines) + "\n")
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
        return EXIT_VALIDATION
    print(f"T_ode  = {T:.10g}")
    print(f"T_eq10 = {t10:.10g}   (window [{spec.s0:g}, {spec.s1:g}])")
    print(f"T_eq6  = {fmt(t6) or 'n/a (non-constant gamma)'}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    specs = config_mod.expand_grid(config_mod.load(args.config))
    rows = run_sweep(specs, args.jobs)
    text = ",".join(SWEEP_HEADER) + "\n" + "".join(row_to_csv(r) + "\n" for r in rows)
    try:
        _write(args.out, text)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
        return EXIT_VALIDATION
    failed = sum(r["status"] != "ok" for r in rows)
    print(f"wrote {len(rows)} rows to {args.out}; {failed} failed")
    return EXIT_NUMERICAL if failed else EXIT_OK


def cmd_verify(args) -> int:
    results = run_suite(args.suite, args.seed)
    for r in results:
        print(r.line())
    bad = [r for r in results if not r.passed]
    print(f"{len(results) - len(bad)}/{len(results)} properties passed")
    return EXIT_VERIFY if bad else EXIT_OK


def cmd_predict(args) -> int:
    for name in ("g0", "gamma", "eps", "hbar"):
        v = getattr(args, name)
        if not math.isfinite(v):
            raise ConfigError(name, "must be finite")
    if not args.g0 > 0:
        raise ConfigError("g0", "must be > 0")
    if args.gamma < 0:
        raise ConfigError("gamma", "must be >= 0")
    if not args.eps > 0:
        raise ConfigError("eps", "must be > 0")
    if not args.hbar > 0:
        raise ConfigError("hbar", "must be > 0")
    r = predict(args.g0, args.gamma, args.eps, args.hbar)
    print(f"x = hbar*gamma/g0      {r['x']:.10g}")
    print(f"Landau-Zener (gamma=0) {r['T_lz']:.10g}")
    print(f"dephasing, leading     {r['T_eq6']:.10g}")
    print(f"weak-dephasing form    {r['T_weak']:.10g}")
    print(f"Zeno form              {r['T_strong']:.10g}")
    print(f"regime                 {r['regime']} (x {'<' if r['x'] < 1 else '>='} 1)")
    if r["adiabatic_warning"]:
        print(f"warning: eps={args.eps:g} >= hbar*gamma^2={args.hbar * args.gamma**2:g}; "
              "the leading-order dephasing formula is not reliable here")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lzdephase",
                                 description="Landau-Zener tunneling with dephasing")
    sub = ap.add_subparsers(dest="command", required=True)

    q = sub.add_parser("qcurve", help="tabulate or plot Q(x)")
    q.add_argument("--xmin", type=float, default=0.0)
    q.add_argument("--xmax", type=float, default=10.0)
    q.add_argument("--n", type=int, default=201)
    q.add_argument("--out", required=True)
    q.add_argument("--format", choices=("csv", "json", "svg"), default="csv")
    q.set_defaults(func=cmd_qcurve)

    s = sub.add_parser("simulate", help="integrate the master equation for one config")
    s.add_argument("--config", required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_simulate)

    w = sub.add_parser("sweep", help="run a grid of configs")
    w.add_argument("--config", required=True)
    w.add_argument("--out", required=True)
    w.add_argument("--jobs", type=int, default=1)
    w.set_defaults(func=cmd_sweep)

    v = sub.add_parser("verify", help="randomized property suites")
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    pr = sub.add_parser("predict", help="analytic predictions")
    pr.add_argument("--g0", type=float, required=True)
    pr.add_argument("--gamma", type=float, required=True)
    pr.add_argument("--eps", type=float, required=True)
    pr.add_argument("--hbar", type=float, default=1.0)
    pr.set_defaults(func=cmd_predict)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: invalid config: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except LZDephaseError as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
