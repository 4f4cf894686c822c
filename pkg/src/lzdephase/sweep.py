"""Parameter sweeps over independent master-equation runs."""
from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor

from .errors import LZDephaseError
from .experiments import RunSpec, measure_tunneling
from .formulas import dephasing_tunneling_eq6, finite_interval_tunneling_eq10
from .model import Constant

SWEEP_HEADER = ("g0", "gamma", "eps", "s0", "s1", "T_ode", "T_eq10", "T_eq6",
                "rel_dev_ode_eq10", "status")


def fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    return f"{x:.17g}"


def gamma_label(prof) -> str:
    if isinstance(prof, Constant):
        return fmt(prof.value)
    return json.dumps([list(p) for p in prof.points], separators=(",", ":"))


def run_point(spec: RunSpec) -> dict:
    """One sweep row; failures become a status string instead of raising."""
    p = spec.p
    row = {"g0": p.g0, "gamma": gamma_label(p.gamma), "eps": spec.eps,
           "s0": spec.s0, "s1": spec.s1, "T_ode": None, "T_eq10": None,
           "T_eq6": None, "rel_dev_ode_eq10": None, "status": "ok"}
    try:
        row["T_eq10"] = finite_interval_tunneling_eq10(p, spec.eps, spec.s0, spec.s1).T
        if isinstance(p.gamma, Constant):
            row["T_eq6"] = dephasing_tunneling_eq6(p, spec.eps)
        row["T_ode"] = measure_tunneling(spec).T
        if row["T_eq10"] > 0:
            row["rel_dev_ode_eq10"] = (row["T_ode"] - row["T_eq10"]) / row["T_eq10"]
    except LZDephaseError as exc:
        row["status"] = f"error:{type(exc).__name__}"
    return row


def run_sweep(specs: list[RunSpec], jobs: int = 1) -> list[dict]:
    """Rows in the order of ``specs`` regardless of ``jobs``."""
    if jobs <= 1 or len(specs) <= 1:
        return [run_point(s) for s in specs]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_point, specs))


def row_to_csv(row: dict) -> str:
    cells = []
    for key in SWEEP_HEADER:
        v = fmt(row[key])
        if "," in v or '"' in v:
            v = '"' + v.replace('"', '""') + '"'
        cells.append(v)
    return ",".join(cells)
