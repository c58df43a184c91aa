"""Kernel selection: numba-compiled stencils with a pure-numpy fallback.

Set CONEENDS_NO_NUMBA=1 to force the numpy path (used by the benchmark and
as a safety hatch on platforms without a working numba).
"""

import os

import numpy as np

from . import _stencils_numpy as _np_impl

_FORCED_OFF = os.environ.get("CONEENDS_NO_NUMBA", "").strip() not in ("", "0")

if not _FORCED_OFF:
    try:
        from . import _stencils_numba as _nb_impl

        HAS_NUMBA = True
    except ImportError:  # pragma: no cover - exercised only without numba
        _nb_impl = None
        HAS_NUMBA = False
else:
    _nb_impl = None
    HAS_NUMBA = False

_impl = _nb_impl if HAS_NUMBA else _np_impl

BACKEND = "numba" if HAS_NUMBA else "numpy"


def _along(f, h, axis, periodic, fn):
    f = np.ascontiguousarray(f, dtype=np.float64)
    if axis == 0:
        return fn(f, float(h), bool(periodic))
    return fn(np.ascontiguousarray(f.T), float(h), bool(periodic)).T


def deriv1(f, h, axis, periodic=False):
    """First derivative of a 2D sample array along `axis`."""
    return _along(f, h, axis, periodic, _impl.deriv1_axis0)


def deriv2(f, h, axis, periodic=False):
    """Second derivative of a 2D sample array along `axis`."""
    return _along(f, h, axis, periodic, _impl.deriv2_axis0)


def deriv_mixed(f, hx, hy, periodic_x=False, periodic_y=False):
    """Mixed second derivative d^2 f / dx dy (axis 0 then axis 1)."""
    return deriv1(deriv1(f, hx, 0, periodic_x), hy, 1, periodic_y)
