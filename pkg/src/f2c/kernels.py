"""Kernel selection: compiled ``_kernels`` when built, numpy fallback otherwise.

Set ``F2C_PURE_PYTHON=1`` to force the fallback.
"""
import os

if os.environ.get("F2C_PURE_PYTHON", "") not in ("", "0"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND
coboundary = _impl.coboundary
differential_matrix = _impl.differential_matrix
snf_mod = _impl.snf_mod
normalized_positions = _impl.normalized_positions
