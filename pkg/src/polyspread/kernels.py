"""Backend selector for the recurrence kernels.

The compiled extension is preferred; the numpy implementation is the
fallback.  Set POLYSPREAD_FORCE_PY=1 to skip the extension (used by the
benchmark and by tests that must cover both paths).
"""
import os

if os.environ.get("POLYSPREAD_FORCE_PY"):
    from . import _kernels_py as _impl
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
        BACKEND = "compiled"
    except ImportError:
        from . import _kernels_py as _impl
        BACKEND = "python"

eval_scaled = _impl.eval_scaled
christoffel_log_weights = _impl.christoffel_log_weights
