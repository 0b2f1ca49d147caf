"""Kernel backend selection.

The compiled extension is used when importable; setting the environment
variable ``STIELTJES_PURE_PYTHON=1`` forces the pure-Python kernels.
"""

import os

if os.environ.get("STIELTJES_PURE_PYTHON", "") not in ("", "0"):
    from . import _pykernels as kernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as kernels
        BACKEND = "compiled"
    except ImportError:
        from . import _pykernels as kernels
        BACKEND = "python"

from . import _pykernels as pykernels

__all__ = ["kernels", "pykernels", "BACKEND"]
