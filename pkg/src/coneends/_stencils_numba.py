"""Numba-compiled finite-difference stencils (hot path).

Same contract as _stencils_numpy: second-order stencils along axis 0,
one-sided at the edges of non-periodic axes.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def deriv1_axis0(f, h, periodic):
    n, m = f.shape
    out = np.empty((n, m), dtype=np.float64)
    inv2h = 1.0 / (2.0 * h)
    for j in range(m):
        for i in range(1, n - 1):
            out[i, j] = (f[i + 1, j] - f[i - 1, j]) * inv2h
        if periodic:
            out[0, j] = (f[1, j] - f[n - 1, j]) * inv2h
            out[n - 1, j] = (f[0, j] - f[n - 2, j]) * inv2h
        else:
            out[0, j] = (-3.0 * f[0, j] + 4.0 * f[1, j] - f[2, j]) * inv2h
            out[n - 1, j] = (3.0 * f[n - 1, j] - 4.0 * f[n - 2, j] + f[n - 3, j]) * inv2h
    return out


@njit(cache=True)
def deriv2_axis0(f, h, periodic):
    n, m = f.shape
    out = np.empty((n, m), dtype=np.float64)
    invh2 = 1.0 / (h * h)
    for j in range(m):
        for i in range(1, n - 1):
            out[i, j] = (f[i + 1, j] - 2.0 * f[i, j] + f[i - 1, j]) * invh2
        if periodic:
            out[0, j] = (f[1, j] - 2.0 * f[0, j] + f[n - 1, j]) * invh2
            out[n - 1, j] = (f[0, j] - 2.0 * f[n - 1, j] + f[n - 2, j]) * invh2
        else:
            out[0, j] = (2.0 * f[0, j] - 5.0 * f[1, j] + 4.0 * f[2, j] - f[3, j]) * invh2
            out[n - 1, j] = (
                2.0 * f[n - 1, j] - 5.0 * f[n - 2, j] + 4.0 * f[n - 3, j] - f[n - 4, j]
            ) * invh2
    return out
