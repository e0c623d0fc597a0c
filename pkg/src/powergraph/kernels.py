"""Hot Cayley-table loops, compiled when the extension is built.

Set ``POWERGRAPH_PURE=1`` to force the numpy fallback.
"""
from __future__ import annotations

import os

import numpy as np

from . import _kernels_py

if os.environ.get("POWERGRAPH_PURE", "") not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"


def _as_table(table: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(table, dtype=np.int32)


def element_orders(table: np.ndarray) -> np.ndarray:
    return _impl.element_orders(_as_table(table))


def power_arcs(table: np.ndarray) -> np.ndarray:
    return _impl.power_arcs(_as_table(table))


def associativity_witness(table: np.ndarray, limit: int = -1):
    return _impl.associativity_witness(_as_table(table), limit)
