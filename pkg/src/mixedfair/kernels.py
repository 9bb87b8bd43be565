"""Backend selection for the enumeration kernels.

The compiled extension is used when it is importable; set the environment
variable ``MIXEDFAIR_PURE_PYTHON=1`` to force the pure-Python fallback.
Integer matrices whose sums might overflow 64 bits always go to the
fallback, which uses arbitrary-precision ints.
"""
from __future__ import annotations

import os

from . import _kernels_py

EF, PROP, EF1, PROP1, EFX, PO = (_kernels_py.EF, _kernels_py.PROP, _kernels_py.EF1,
                                 _kernels_py.PROP1, _kernels_py.EFX, _kernels_py.PO)

_compiled = None
if not os.environ.get("MIXEDFAIR_PURE_PYTHON"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"

# n * sum|u| must stay well inside int64
_SAFE = 1 << 60


def _impl(U):
    if _compiled is None:
        return _kernels_py
    n = len(U)
    bound = max((sum(abs(int(v)) for v in row) for row in U), default=0)
    if (n + 1) * (bound + 1) >= _SAFE:
        return _kernels_py
    return _compiled


def find_dominating(U, base) -> int:
    return _impl(U).find_dominating(U, base)


def pareto_frontier_values(U) -> list[tuple[int, ...]]:
    return [tuple(int(v) for v in f) for f in _impl(U).pareto_frontier_values(U)]


def first_satisfying(U, flags: int, frontier=None) -> int:
    return _impl(U).first_satisfying(U, flags, frontier)
