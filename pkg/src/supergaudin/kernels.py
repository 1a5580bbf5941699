"""Kernel backend selection.

Imports the compiled exact-arithmetic kernels when the extension built,
falling back to the pure-Python twin otherwise.  Set the environment
variable ``SUPERGAUDIN_PURE=1`` to force the fallback (used by the
benchmark and by the backend-equivalence tests).
"""

import os

from . import _kernels_py

if os.environ.get("SUPERGAUDIN_PURE"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels_cy as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = "compiled" if _impl is not _kernels_py else "python"

mat_mul = _impl.mat_mul
int_rref = _impl.int_rref
int_nullspace = _impl.int_nullspace
charpoly = _impl.charpoly
