"""Backend selection for the matrix kernels.

The compiled extension is used when it imports; otherwise the pure-Python
module is used. Set WILDMONO_PURE=1 to force the fallback.
"""
import os

from . import _kernels_py

if os.environ.get("WILDMONO_PURE"):
    MatrixKernel = _kernels_py.MatrixKernel
    BACKEND = "python"
else:
    try:
        from ._kernels import MatrixKernel  # type: ignore[import-not-found]

        BACKEND = "cython"
    except ImportError:
        MatrixKernel = _kernels_py.MatrixKernel
        BACKEND = "python"

PyMatrixKernel = _kernels_py.MatrixKernel

__all__ = ["MatrixKernel", "PyMatrixKernel", "BACKEND"]
