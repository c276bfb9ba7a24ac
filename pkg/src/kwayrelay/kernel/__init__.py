"""Dense complex linear-algebra kernel with compiled and pure backends.

The hot operations (LU inversion, dominant eigenpair, smallest singular
value) exist twice: a Cython extension (``_ckernel``) and a pure-Python
twin (``_pykernel``).  The compiled one is preferred at import; set
``KWAYRELAY_PURE=1`` to force the fallback (used by the benchmark).

All public functions take/return numpy complex128 arrays and are pure
value-in/value-out, so they are safe to call from parallel trial workers.
"""

import os

import numpy as np

from ..errors import NoConvergence, SingularMatrix  # noqa: F401  (re-export)

from . import _pykernel

if os.environ.get("KWAYRELAY_PURE", "") == "1":
    _ckernel = None
else:
    try:
        from . import _ckernel
    except ImportError:
        _ckernel = None

BACKEND = "compiled" if _ckernel is not None else "pure"


def _as_cmatrix(a, square=False):
    a = np.ascontiguousarray(a, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError("expected a 2-D matrix, got ndim=%d" % a.ndim)
    if square and a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix, got %s" % (a.shape,))
    if not np.all(np.isfinite(a.view(np.float64))):
        raise ValueError("matrix has non-finite entries")
    return a


def invert(a):
    """Inverse of a square complex matrix (LU with partial pivoting).

    Raises SingularMatrix when no usable pivot exists.
    """
    a = _as_cmatrix(a, square=True)
    if _ckernel is not None:
        out = np.empty_like(a)
        _ckernel.lu_invert(a, out)
        return out
    return np.array(_pykernel.lu_invert(a.tolist()), dtype=np.complex128)


def dominant_eigenpair(a):
    """(eigenvalue, unit eigenvector) for the largest-modulus eigenvalue.

    Power iteration with a deterministic all-ones start; raises
    NoConvergence when the iteration cap is hit (near-degenerate spectrum).
    """
    a = _as_cmatrix(a, square=True)
    if _ckernel is not None:
        f = np.empty(a.shape[0], dtype=np.complex128)
        lam = _ckernel.dominant_eigenpair(a, f)
        return lam, f
    lam, f = _pykernel.dominant_eigenpair(a.tolist())
    return lam, np.array(f, dtype=np.complex128)


def min_singular(a):
    """Smallest singular value of a (possibly rectangular) matrix."""
    a = _as_cmatrix(a)
    if _ckernel is not None:
        return _ckernel.min_singular(a)
    return _pykernel.min_singular(a.tolist())
