"""Envelope bounds built on the exactly soluble shifted Coulomb problem.

A potential V(r) = v g(h(r)) with h(r) = -1/r and g of definite convexity is
bounded by its tangent lines v [b(t) h(r) + c(t)]. Each tangent is a shifted
Coulomb potential, so the comparison theorem turns its exact energy into a
bound that is then optimized over the contact radius t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from ._roots import bracketed_root, expand_upward
from .channels import Channel, principal_quantum
from .errors import DomainError, NoDiscreteSpectrum, NotApplicable, NumericalFailure
from .exact_spectra import shifted_coulomb_energy


def coulomb_base(r):
    return -1.0 / np.asarray(r, dtype=float)


@dataclass(frozen=True)
class Transformation:
    """g(h) with its first two derivatives."""

    g: Callable
    dg: Callable
    d2g: Callable
    label: str = "g"

    def shape(self, r):
        """f(r) = g(h(r)) over the Coulomb base."""
        return self.g(coulomb_base(r))


# ln r = -ln(-h) with h = -1/r
LOG_OVER_COULOMB = Transformation(
    g=lambda h: -np.log(-h),
    dg=lambda h: -1.0 / h,
    d2g=lambda h: 1.0 / (h * h),
    label="log",
)


def shifted_coulomb_transformation(const: float) -> Transformation:
    """g(h) = h + const, so that f(r) = -1/r + const."""
    return Transformation(
        g=lambda h: h + const,
        dg=lambda h: np.ones_like(np.asarray(h, dtype=float)),
        d2g=lambda h: np.zeros_like(np.asarray(h, dtype=float)),
        label=f"coulomb+{const:g}",
    )


@dataclass(frozen=True)
class TangentCoefficients:
    t: float
    b: float
    c: float


@dataclass(frozen=True)
class ConvexityCertificate:
    samples: int
    min_d2g: float
    max_d2g: float

    @property
    def verdict(self) -> str:
        if self.min_d2g >= 0:
            return "convex"
        if self.max_d2g <= 0:
            return "concave"
        return "mixed"


@dataclass(frozen=True)
class EnvelopeBound:
    value: float
    direction: str
    t_opt: float
    q_opt: float
    convexity_certificate: Optional[ConvexityCertificate] = None
    multimodal: bool = False


def tangent_coefficients(gt: Transformation, h: Callable, t: float) -> TangentCoefficients:
    """b = g'(h(t)), c = g(h(t)) - h(t) g'(h(t)) for the tangent at r = t."""
    if not t > 0:
        raise DomainError("tangency radius t must be positive")
    ht = float(h(t))
    b = float(gt.dg(ht))
    c = float(gt.g(ht)) - ht * b
    return TangentCoefficients(t, b, c)


def certify_convexity(gt: Transformation, h: Callable = coulomb_base, n: int = 256,
                      r_range: Tuple[float, float] = (1e-4, 1e4)) -> ConvexityCertificate:
    r = np.logspace(math.log10(r_range[0]), math.log10(r_range[1]), n)
    d2 = np.asarray(gt.d2g(h(r)), dtype=float)
    return ConvexityCertificate(n, float(d2.min()), float(d2.max()))


def _solve_u(v: float, mu: float, const: float) -> float:
    # u - 2 v mu - v^2 const + v^2 ln u = 0 is increasing in u
    def phi(u):
        return u - 2 * v * mu - v * v * const + v * v * math.log(u)

    lo = 1e-300
    hi = expand_upward(phi, 0.0, max(1.0, abs(v * mu)))
    return bracketed_root(phi, lo, hi, xtol=1e-15)


def log_envelope_bound(v: float, ch: Channel) -> EnvelopeBound:
    """Envelope bound for V = v ln r from its implicit formula

        E = mu + v [1 + 2 ln P - ln(v (mu + E))],  P = nu + 1 + L,

    a lower bound for v > 0 (spin symmetry) and an upper bound for v < 0
    (pseudo-spin symmetry). At the optimum q = (v t / P)^2 = v / (mu + E).
    """
    if v == 0:
        raise DomainError("log coupling must be non-zero")
    if (v > 0) != (ch.s == 1):
        raise DomainError("log envelope needs v > 0 with spin symmetry or v < 0 with pseudo-spin symmetry")
    mu = ch.mu
    P = principal_quantum(ch, "coulomb-like")
    u = _solve_u(v, mu, 1.0 + 2.0 * math.log(P))
    E = mu + v * (1.0 + 2.0 * math.log(P) - math.log(u))
    q = v / (mu + E)
    t = P * math.sqrt(q) / abs(v)
    return EnvelopeBound(E, "lower" if v > 0 else "upper", t, q, certify_convexity(LOG_OVER_COULOMB))


def tangent_energy(gt: Transformation, v: float, ch: Channel, t: float) -> float:
    """Exact energy of the tangent shifted Coulomb potential at contact radius t."""
    tc = tangent_coefficients(gt, coulomb_base, t)
    return shifted_coulomb_energy(v * tc.b, v * tc.c, ch).E


def coulomb_base_envelope(
    gt: Transformation,
    g_meta: str,
    v: float,
    ch: Channel,
    t_grid: Tuple[float, float] = (1e-4, 1e4),
    n_grid: int = 801,
) -> EnvelopeBound:
    """Best tangent bound over t for V(r) = v g(-1/r).

    ``g_meta`` is the claimed convexity of g ("convex" or "concave"); it is
    checked by sampling g''. Convex v g gives a lower bound (max over t),
    concave v g an upper bound (min over t).
    """
    cert = certify_convexity(gt)
    verdict = cert.verdict
    if verdict == "mixed":
        raise NotApplicable("g'' changes sign; no envelope bound")
    linear = cert.min_d2g == 0 and cert.max_d2g == 0
    if not linear and verdict != g_meta:
        raise NotApplicable(f"g is {verdict}, not {g_meta}")
    effective = g_meta if v > 0 else ("concave" if g_meta == "convex" else "convex")
    lower = effective == "convex"
    sense = 1.0 if lower else -1.0

    def objective(log_t):
        try:
            return sense * tangent_energy(gt, v, ch, math.exp(log_t))
        except NoDiscreteSpectrum:
            return -math.inf

    log_ts = np.linspace(math.log(t_grid[0]), math.log(t_grid[1]), n_grid)
    vals = np.array([objective(x) for x in log_ts])
    if not np.isfinite(vals).any():
        raise NumericalFailure("no admissible tangent on the t grid")
    i = int(np.argmax(vals))
    finite = np.isfinite(vals[1:-1])
    margin = 1e-12 * (1.0 + np.abs(np.where(finite, vals[1:-1], 0.0)))
    peaks = (vals[1:-1] > vals[:-2] + margin) & (vals[1:-1] >= vals[2:]) & finite
    multimodal = int(np.count_nonzero(peaks)) > 1

    if 0 < i < n_grid - 1 and vals[i] > vals[i - 1] and vals[i] > vals[i + 1]:
        res = minimize_scalar(lambda x: -objective(x), bracket=(log_ts[i - 1], log_ts[i], log_ts[i + 1]),
                              method="golden", tol=1e-12)
        log_t = float(res.x) if -res.fun >= vals[i] else float(log_ts[i])
    else:
        log_t = float(log_ts[i])
    t = math.exp(log_t)
    value = sense * objective(log_t)
    P = principal_quantum(ch, "coulomb-like")
    q = (v * tangent_coefficients(gt, coulomb_base, t).b / P) ** 2
    return EnvelopeBound(value, "lower" if lower else "upper", t, float(q), cert, multimodal)
