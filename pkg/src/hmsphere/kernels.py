"""Backend selection for the hot kernels.

The compiled extension is used when importable; set ``HMSPHERE_PURE_PYTHON=1``
to force the pure-Python fallback (both expose the same functions).
"""

import os

if os.environ.get("HMSPHERE_PURE_PYTHON", "") not in ("", "0"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        from . import _kernels_py as _impl

BACKEND = "python" if _impl.__name__.endswith("_kernels_py") else "cython"

log_x = _impl.log_x
lam = _impl.lam
q = _impl.q
dq = _impl.dq
d2q = _impl.d2q
f_drop = _impl.f_drop
turning_points = _impl.turning_points
period_pair = _impl.period_pair

__all__ = [
    "BACKEND",
    "log_x",
    "lam",
    "q",
    "dq",
    "d2q",
    "f_drop",
    "turning_points",
    "period_pair",
]
