"""Integration kernels: compiled extension with pure-Python fallback.

Set HOMOFLOW_PURE_PYTHON=1 to force the fallback (used by the kernel
benchmark and for debugging).
"""

import os

from . import _dopri_py

if os.environ.get("HOMOFLOW_PURE_PYTHON") == "1":
    _backend = _dopri_py
    BACKEND = "python"
else:
    try:
        from . import _dopri_cy as _backend

        BACKEND = "cython"
    except ImportError:
        _backend = _dopri_py
        BACKEND = "python"

STATUS_DONE = _dopri_py.STATUS_DONE
STATUS_BLOWUP = _dopri_py.STATUS_BLOWUP
STATUS_UNDERFLOW = _dopri_py.STATUS_UNDERFLOW
STATUS_MAXSTEPS = _dopri_py.STATUS_MAXSTEPS
FORM_PLAIN = _dopri_py.FORM_PLAIN
FORM_LEFT = _dopri_py.FORM_LEFT
FORM_RIGHT = _dopri_py.FORM_RIGHT

integrate_riccati = _backend.integrate_riccati
integrate_linear = _backend.integrate_linear

from .dense import DenseSolution  # noqa: E402

__all__ = [
    "BACKEND",
    "DenseSolution",
    "FORM_LEFT",
    "FORM_PLAIN",
    "FORM_RIGHT",
    "STATUS_BLOWUP",
    "STATUS_DONE",
    "STATUS_MAXSTEPS",
    "STATUS_UNDERFLOW",
    "integrate_linear",
    "integrate_riccati",
]
