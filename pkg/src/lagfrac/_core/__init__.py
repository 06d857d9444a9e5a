"""Hot inner loops with a compiled backend and a numpy fallback.

The compiled extension ``_kernels`` is used when it was built; otherwise the
pure-numpy ``_fallback`` module is used.  Setting ``LAGFRAC_PURE_PYTHON=1``
forces the fallback (handy for parity tests and benchmarks).
"""
import os

from . import _fallback

if os.environ.get("LAGFRAC_PURE_PYTHON", "") not in ("", "0"):
    _impl = _fallback
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _fallback
        BACKEND = "python"

laguerre_scaled = _impl.laguerre_scaled
laguerre_table = _impl.laguerre_table
hermite_table = _impl.hermite_table
log_gegenbauer_sum = _impl.log_gegenbauer_sum
log_laguerre_sum = _impl.log_laguerre_sum
log_schlafli = _impl.log_schlafli

__all__ = [
    "BACKEND",
    "laguerre_scaled",
    "laguerre_table",
    "hermite_table",
    "log_gegenbauer_sum",
    "log_laguerre_sum",
    "log_schlafli",
]
