"""Backend selection for the series kernels.

The compiled extension is used when it imports; otherwise the pure-Python
mirror takes over.  Setting ``HK_PURE_PYTHON=1`` forces the fallback.
"""
import os

if os.environ.get("HK_PURE_PYTHON", "") not in ("", "0"):
    from . import _core_py as _impl
    BACKEND = "python"
else:
    try:
        from . import _core as _impl
        BACKEND = "compiled"
    except ImportError:  # no compiler at install time
        from . import _core_py as _impl
        BACKEND = "python"

hyp1f1_series = _impl.hyp1f1_series
hyp0f2_series = _impl.hyp0f2_series
eps_series_direct = _impl.eps_series_direct
eps_series_kummer = _impl.eps_series_kummer
k0_series = _impl.k0_series
t_series = _impl.t_series

__all__ = ["BACKEND", "hyp1f1_series", "hyp0f2_series", "eps_series_direct",
           "eps_series_kummer", "k0_series", "t_series"]
