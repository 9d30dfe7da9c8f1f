"""Bracketed scalar root finding shared by the spectral solvers."""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import brentq

from .errors import NumericalFailure

XTOL = 1e-12
MAXITER = 200


def bracketed_root(fn, lo: float, hi: float, xtol: float = XTOL) -> float:
    """Root of ``fn`` in [lo, hi]; the endpoint values must differ in sign."""
    f_lo, f_hi = fn(lo), fn(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if math.copysign(1.0, f_lo) == math.copysign(1.0, f_hi):
        raise NumericalFailure(f"no sign change on [{lo:.6g}, {hi:.6g}]")
    try:
        return brentq(fn, lo, hi, xtol=xtol, rtol=4 * np.finfo(float).eps, maxiter=MAXITER)
    except RuntimeError as exc:
        raise NumericalFailure(str(exc)) from exc


def expand_upward(fn, lo: float, step: float, limit: int = 200) -> float:
    """Smallest ``lo + step * 2**k`` at which ``fn`` is positive."""
    for k in range(limit):
        x = lo + step * 2.0**k
        if fn(x) > 0:
            return x
    raise NumericalFailure("could not bracket a root")


def sign_changes(values) -> np.ndarray:
    """Indices i with values[i] and values[i+1] of strictly opposite sign."""
    v = np.asarray(values, dtype=float)
    return np.nonzero(v[:-1] * v[1:] < 0)[0]
