"""Numba kernels for the Numerov recurrence ``y'' = g(r) y`` on a uniform grid."""

import numpy as np
from numba import njit

_BIG = 1e150


@njit(cache=True)
def integrate_outward(g, h, y0, y1, stop, start=0):
    """Integrate from index ``start`` up to ``stop`` inclusive.

    Returns the samples and the number of strict sign changes. Samples are
    rescaled on overflow, so only ratios within one call are meaningful.
    Entries before ``start`` are left at zero.
    """
    n = stop + 1
    y = np.zeros(n)
    c = h * h / 12.0
    y[start] = y0
    y[start + 1] = y1
    nodes = 0
    if y0 * y1 < 0.0:
        nodes += 1
    for i in range(start + 1, n - 1):
        a = 1.0 - c * g[i + 1]
        b = 2.0 * (1.0 + 5.0 * c * g[i])
        d = 1.0 - c * g[i - 1]
        y[i + 1] = (b * y[i] - d * y[i - 1]) / a
        if y[i + 1] * y[i] < 0.0:
            nodes += 1
        if abs(y[i + 1]) > _BIG:
            for k in range(i + 2):
                y[k] /= _BIG
    return y, nodes


@njit(cache=True)
def integrate_inward(g, h, yn, yn1, stop):
    """Integrate from the last index down to ``stop`` inclusive."""
    n = g.shape[0]
    y = np.zeros(n)
    c = h * h / 12.0
    y[n - 1] = yn
    y[n - 2] = yn1
    for i in range(n - 2, stop, -1):
        a = 1.0 - c * g[i - 1]
        b = 2.0 * (1.0 + 5.0 * c * g[i])
        d = 1.0 - c * g[i + 1]
        y[i - 1] = (b * y[i] - d * y[i + 1]) / a
        if abs(y[i - 1]) > _BIG:
            for k in range(i - 1, n):
                y[k] /= _BIG
    return y


@njit(cache=True)
def count_nodes(y):
    nodes = 0
    last = 0.0
    for i in range(y.shape[0]):
        if y[i] != 0.0:
            if last != 0.0 and y[i] * last < 0.0:
                nodes += 1
            last = y[i]
    return nodes
