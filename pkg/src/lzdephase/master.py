"""Backend selection for the master-equation kernel.

The compiled ``_master_ext`` is used when it was built; otherwise, or when
``LZDEPHASE_PURE_PYTHON`` is set, the pure-Python ``_master_py`` runs.
"""
from __future__ import annotations

import os

from . import _master_py

try:
    from . import _master_ext
except ImportError:  # extension not built
    _master_ext = None

BACKENDS = {"python": _master_py}
if _master_ext is not None:
    BACKENDS["cython"] = _master_ext

if os.environ.get("LZDEPHASE_PURE_PYTHON") or _master_ext is None:
    DEFAULT_BACKEND = "python"
else:
    DEFAULT_BACKEND = "cython"


def get_backend(name: str | None = None):
    name = name or DEFAULT_BACKEND
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}") from None
