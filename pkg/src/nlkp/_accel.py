"""Optional numba acceleration.

Kernels in :mod:`nlkp._kernels` are written once in a numba-compatible
subset of Python. They are compiled with ``numba.njit`` when numba is
importable and ``NLKP_DISABLE_NUMBA`` is unset (or ``0``); otherwise the
pure numpy path is used.
"""
from __future__ import annotations

import os

_flag = os.environ.get("NLKP_DISABLE_NUMBA", "0").strip().lower()
DISABLED_BY_ENV = _flag not in ("", "0", "false", "no")

try:
    import numba as _numba
except ImportError:  # pragma: no cover - exercised only without numba
    _numba = None

NUMBA_AVAILABLE = _numba is not None
USE_NUMBA = NUMBA_AVAILABLE and not DISABLED_BY_ENV


def njit(fn):
    """Compile ``fn`` with numba if enabled, else return it unchanged."""
    if not USE_NUMBA:
        return fn
    return _numba.njit(cache=True, nogil=True)(fn)


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"
