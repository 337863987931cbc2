"""Selects the compiled kernels when they are built, else the Python ones."""

import os

BACKEND = "python"

if os.environ.get("GZERO_PURE_PYTHON", "") not in ("", "0"):
    from ._kernels_py import t_level_arrays, union_find_scan
else:
    try:
        from ._kernels import t_level_arrays, union_find_scan
        BACKEND = "cython"
    except ImportError:
        from ._kernels_py import t_level_arrays, union_find_scan

__all__ = ["BACKEND", "t_level_arrays", "union_find_scan"]
