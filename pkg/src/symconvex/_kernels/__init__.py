"""Hot kernels: compiled if the extension was built, numpy otherwise.

Set ``SYMCONVEX_PURE_PYTHON=1`` before import to force the fallback.
"""
import os

from . import _pykernels
from ._pykernels import INFEASIBLE, ITERATION_LIMIT, OPTIMAL, UNBOUNDED

BACKEND = "python"
rq_positive = _pykernels.rq_positive
simplex_solve = _pykernels.simplex_solve

if os.environ.get("SYMCONVEX_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels
    except ImportError:
        _ckernels = None
    else:
        BACKEND = "cython"
        rq_positive = _ckernels.rq_positive
        simplex_solve = _ckernels.simplex_solve
else:
    _ckernels = None


def backends():
    """Map backend name to ``(rq_positive, simplex_solve)`` for every backend available."""
    out = {"python": (_pykernels.rq_positive, _pykernels.simplex_solve)}
    if _ckernels is not None:
        out["cython"] = (_ckernels.rq_positive, _ckernels.simplex_solve)
    else:
        try:
            from . import _ckernels as ck
        except ImportError:
            pass
        else:
            out["cython"] = (ck.rq_positive, ck.simplex_solve)
    return out


__all__ = [
    "BACKEND", "backends", "rq_positive", "simplex_solve",
    "OPTIMAL", "INFEASIBLE", "UNBOUNDED", "ITERATION_LIMIT",
]
