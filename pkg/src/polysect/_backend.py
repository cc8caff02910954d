"""Kernel backend selection.

The compiled extension is used when it imported cleanly; otherwise the
numpy implementation is used.  Callers may force either by name.
"""
from __future__ import annotations

from . import _pykernels

try:
    from . import _kernels as _native
except ImportError:  # extension not built
    _native = None

BACKENDS = {"python": _pykernels}
if _native is not None:
    BACKENDS["native"] = _native

DEFAULT_BACKEND = "native" if _native is not None else "python"


def kernels(name=None):
    name = name or DEFAULT_BACKEND
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}") from None
