"""Kernel backend dispatch.

The numba-compiled backend is the default; set HYPERINT_PURE_NUMPY=1 to
force the pure-numpy implementation (it is also selected automatically when
numba is unavailable).  Both expose the same functions: ``rf``, ``rj``,
``panel_sqrt``.
"""

import os

_TRUTHY = {"1", "true", "yes", "on"}


def _want_pure_numpy() -> bool:
    return os.environ.get("HYPERINT_PURE_NUMPY", "").strip().lower() in _TRUTHY


if _want_pure_numpy():
    from . import _ref as _impl

    BACKEND = "numpy"
else:
    try:
        from . import _jit as _impl

        BACKEND = "numba"
    except ImportError:
        from . import _ref as _impl

        BACKEND = "numpy"

rf = _impl.rf
rj = _impl.rj
panel_sqrt = _impl.panel_sqrt

__all__ = ["rf", "rj", "panel_sqrt", "BACKEND"]
