"""Backend selection for the hot kernels.

Set ``PANAST_DISABLE_NUMBA=1`` to run the pure-numpy/Python paths. Kernels are
always decorated when numba imports (compilation is lazy), so callers can
still request either backend explicitly.
"""
from __future__ import annotations

import os

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dependency in practice
    numba = None
    HAVE_NUMBA = False

NUMBA = "numba"
NUMPY = "numpy"


def numba_disabled() -> bool:
    return os.environ.get("PANAST_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")


def default_backend() -> str:
    return NUMBA if HAVE_NUMBA and not numba_disabled() else NUMPY


def resolve_backend(backend: str | None) -> str:
    if backend is None:
        return default_backend()
    if backend not in (NUMBA, NUMPY):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == NUMBA and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not installed")
    return backend


def njit(*args, **kwargs):
    if HAVE_NUMBA:
        return numba.njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda f: f
