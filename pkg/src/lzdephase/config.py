"""Flat JSON run configuration."""
from __future__ import annotations

import json
import math
from pathlib import Path

from .errors import ConfigError
from .experiments import RunSpec
from .model import Constant, ModelParams, PiecewiseLinear, default_window
from .odeint import IntegratorConfig

KEYS = {"g0", "gamma", "eps", "hbar", "s0", "s1", "S", "rel_tol", "abs_tol", "samples", "backend"}


def load(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("config", f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError("config", "top level must be a JSON object")
    unknown = sorted(set(data) - KEYS)
    if unknown:
        raise ConfigError(unknown[0], "unknown key")
    return data


def _number(cfg, key, default=None, positive=False):
    if key not in cfg:
        if default is None:
            raise ConfigError(key, "missing")
        return default
    v = cfg[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise ConfigError(key, f"expected a finite number, got {v!r}")
    if positive and not v > 0:
        raise ConfigError(key, f"must be > 0, got {v!r}")
    return float(v)


def parse_gamma(value):
    """A number gives a constant rate; a list of ``[s, gamma]`` pairs a table."""
    try:
        if isinstance(value, bool):
            raise ValueError("boolean")
        if isinstance(value, (int, float)):
            return Constant(float(value))
        if isinstance(value, list) and value and all(isinstance(p, list) and len(p) == 2 for p in value):
            return PiecewiseLinear(tuple((float(a), float(b)) for a, b in value))
        raise ValueError(f"expected number or list of [s, gamma] pairs, got {value!r}")
    except (TypeError, ValueError) as exc:
        raise ConfigError("gamma", str(exc)) from None


def is_profile_list(value) -> bool:
    return isinstance(value, list) and bool(value) and all(isinstance(p, list) for p in value)


def gamma_grid(value) -> list:
    """Grid entries for a sweep: numbers, or a single table, or a list of tables."""
    if isinstance(value, list) and value and not is_profile_list(value):
        return [parse_gamma(v) for v in value]
    if isinstance(value, list) and value and all(is_profile_list(v) for v in value):
        return [parse_gamma(v) for v in value]
    return [parse_gamma(value)]


def number_grid(cfg, key, default=None, positive=False) -> list[float]:
    v = cfg.get(key, default)
    if v is None:
        raise ConfigError(key, "missing")
    vals = v if isinstance(v, list) else [v]
    if not vals:
        raise ConfigError(key, "empty grid")
    return [_number({key: x}, key, positive=positive) for x in vals]


def build_spec(cfg: dict, g0=None, gamma=None, eps=None) -> RunSpec:
    """Validate one grid point and turn it into a :class:`RunSpec`."""
    g0 = _number(cfg, "g0", positive=True) if g0 is None else g0
    if not g0 > 0:
        raise ConfigError("g0", f"must be > 0, got {g0!r}")
    eps = _number(cfg, "eps", positive=True) if eps is None else eps
    if not eps > 0:
        raise ConfigError("eps", f"must be > 0, got {eps!r}")
    hbar = _number(cfg, "hbar", 1.0, positive=True)
    gamma = parse_gamma(cfg.get("gamma", 0.0)) if gamma is None else gamma
    p = ModelParams(g0, gamma, hbar)
    if "s0" in cfg or "s1" in cfg:
        s0 = _number(cfg, "s0")
        s1 = _number(cfg, "s1")
    else:
        S = _number(cfg, "S", default_window(p), positive=True)
        s0, s1 = -S, S
    if not s0 < s1:
        raise ConfigError("s0", f"window needs s0 < s1, got s0={s0}, s1={s1}")
    rel_tol = _number(cfg, "rel_tol", 1e-10, positive=True)
    abs_tol = _number(cfg, "abs_tol", 1e-12, positive=True)
    samples = cfg.get("samples", 2001)
    if isinstance(samples, bool) or not isinstance(samples, int) or samples < 2:
        raise ConfigError("samples", f"must be an integer >= 2, got {samples!r}")
    backend = cfg.get("backend")
    if backend is not None and backend not in ("cython", "python", "reference"):
        raise ConfigError("backend", f"unknown backend {backend!r}")
    return RunSpec(p, eps, s0, s1, IntegratorConfig(rel_tol, abs_tol), samples, backend)


def expand_grid(cfg: dict) -> list[RunSpec]:
    """Cartesian product in key order g0, gamma, eps (eps varies fastest)."""
    g0s = number_grid(cfg, "g0", positive=True)
    gammas = gamma_grid(cfg.get("gamma", 0.0))
    epss = number_grid(cfg, "eps", positive=True)
    return [build_spec(cfg, g0, gm, e) for g0 in g0s for gm in gammas for e in epss]
