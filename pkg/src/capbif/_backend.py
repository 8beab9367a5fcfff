"""Kernel backend selection.

The numeric hot loops (radial shooting integrator, subset-sum scan) are
written once as plain Python/numpy functions and compiled with numba
when it is available.  The environment variable CAPBIF_BACKEND picks the
path at import time:

    auto   (default)  numba if importable, plain numpy otherwise
    numba             require numba; raise if it cannot be imported
    numpy             never compile, always run the plain functions

The exact Euler-ring layer never goes through numba; it needs Python's
arbitrary-precision integers.
"""

from __future__ import annotations

import os

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised via CAPBIF_BACKEND=numpy
    njit = None
    HAS_NUMBA = False


def _resolve() -> str:
    choice = os.environ.get("CAPBIF_BACKEND", "auto").strip().lower()
    if choice in ("", "auto"):
        return "numba" if HAS_NUMBA else "numpy"
    if choice == "numba":
        if not HAS_NUMBA:
            raise ImportError(
                "CAPBIF_BACKEND=numba but numba is not importable; "
                "install numba or set CAPBIF_BACKEND=numpy"
            )
        return "numba"
    if choice == "numpy":
        return "numpy"
    raise ValueError(f"CAPBIF_BACKEND must be auto, numba or numpy, got {choice!r}")


ACTIVE_BACKEND = _resolve()


def maybe_jit(fn):
    """Compile `fn` under the active backend; identity on the numpy path."""
    if ACTIVE_BACKEND == "numba":
        return njit(cache=True)(fn)
    return fn


def jit_always(fn):
    """Compile regardless of the env flag (benchmark helper); None without numba."""
    if HAS_NUMBA:
        return njit(cache=True)(fn)
    return None
