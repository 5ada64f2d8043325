"""Kernel backend selection.

The package ships a compiled Cython extension (``nrloop._kernels_cy``) for
the hot inner loops together with a pure-Python fallback with identical
semantics (``nrloop._kernels_py``).  The compiled variant is used when it
imports; setting ``NRLOOP_PURE_PYTHON=1`` forces the fallback.
"""

import os

PURE_PYTHON_ENV = "NRLOOP_PURE_PYTHON"

if os.environ.get(PURE_PYTHON_ENV):
    from . import _kernels_py as kernels
    _BACKEND = "python"
else:
    try:
        from . import _kernels_cy as kernels  # type: ignore[no-redef]
        _BACKEND = "compiled"
    except ImportError:
        from . import _kernels_py as kernels  # type: ignore[no-redef]
        _BACKEND = "python"


def backend_name():
    """Name of the active kernel backend: ``"compiled"`` or ``"python"``."""
    return _BACKEND


__all__ = ["kernels", "backend_name", "PURE_PYTHON_ENV"]
