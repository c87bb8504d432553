"""Kernel backend selection.

The compiled extension is preferred; set ``TDGRAPH_PURE_PYTHON=1`` to force
the pure-Python kernels. Both can be loaded side by side for benchmarking.
"""
from __future__ import annotations

import os
from types import ModuleType

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS: dict[str, ModuleType] = {"python": _pykernels}
if _ckernels is not None:
    BACKENDS["cython"] = _ckernels

if os.environ.get("TDGRAPH_PURE_PYTHON", "") not in ("", "0") or _ckernels is None:
    DEFAULT = "python"
else:
    DEFAULT = "cython"


def get_backend(name: str | ModuleType | None = None) -> ModuleType:
    """Resolve a backend by name; ``None`` gives the import-time default."""
    if isinstance(name, ModuleType):
        return name
    key = DEFAULT if name is None else name
    if key == "compiled":
        key = "cython"
    try:
        return BACKENDS[key]
    except KeyError:
        raise ValueError(
            f"unknown or unavailable kernel backend {key!r}; available: {sorted(BACKENDS)}"
        ) from None


def available() -> list[str]:
    return sorted(BACKENDS)
