"""Pure-numpy finite-difference stencils (fallback path).

Centered second-order differences along axis 0; one-sided second-order at the
edges of non-periodic axes. Callers transpose to differentiate along axis 1.
"""

import numpy as np


def deriv1_axis0(f, h, periodic):
    f = np.asarray(f, dtype=float)
    out = np.empty_like(f)
    if periodic:
        out[:] = (np.roll(f, -1, axis=0) - np.roll(f, 1, axis=0)) / (2.0 * h)
        return out
    out[1:-1] = (f[2:] - f[:-2]) / (2.0 * h)
    out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h)
    out[-1] = (3.0 * f[-1] - 4.0 * f[-2] + f[-3]) / (2.0 * h)
    return out


def deriv2_axis0(f, h, periodic):
    f = np.asarray(f, dtype=float)
    out = np.empty_like(f)
    h2 = h * h
    if periodic:
        out[:] = (np.roll(f, -1, axis=0) - 2.0 * f + np.roll(f, 1, axis=0)) / h2
        return out
    out[1:-1] = (f[2:] - 2.0 * f[1:-1] + f[:-2]) / h2
    out[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2
    out[-1] = (2.0 * f[-1] - 5.0 * f[-2] + 4.0 * f[-3] - f[-4]) / h2
    return out
