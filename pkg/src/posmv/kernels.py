"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``POSMV_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"
first_violation = _kernels_py.first_violation

if not os.environ.get("POSMV_PURE_PYTHON"):
    try:
        from . import _kernels
    except ImportError:
        _kernels = None
    else:
        BACKEND = "cython"
        first_violation = _kernels.first_violation
else:
    _kernels = None
