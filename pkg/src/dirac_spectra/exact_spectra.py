"""Closed-form and implicit Dirac spectra for the analytic potential families.

Each solver substitutes the Schrodinger eigenvalue F_{nu L}(w) of its shape
into the combined equation ``E^2 - mu^2 = F(2 v (E + mu))`` and solves for E on
the half-line where the effective coupling v(E + mu) is positive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy.integrate import quad

from ._roots import bracketed_root, expand_upward, sign_changes
from .channels import Channel, principal_quantum
from .errors import DomainError, NoDiscreteSpectrum, NumericalFailure


@dataclass(frozen=True)
class EigenvalueSolution:
    E: float
    residual: float
    nodes: int
    bracket: Tuple[float, float]
    branch_note: str = ""


@dataclass(frozen=True)
class SpectralRegion:
    E_lo: float
    E_hi: float

    def __post_init__(self):
        if not self.E_lo < self.E_hi:
            raise ValueError("empty spectral region")

    def __contains__(self, E: float) -> bool:
        return self.E_lo < E < self.E_hi


def _confining_energy(q, v: float, ch: Channel):
    # the root lies beyond +m (v > 0) or -m (v < 0); q has one sign change there
    m = ch.m
    side = 1.0 if v > 0 else -1.0
    sign0 = math.copysign(1.0, q(side * m))

    def outward(x):
        return -sign0 * q(side * x)

    far = side * expand_upward(outward, m, max(1.0, m))
    bracket = tuple(sorted((side * m, far)))
    return bracketed_root(q, *bracket), bracket


def oscillator_energy(v: float, ch: Channel) -> EigenvalueSolution:
    """Dirac energy for V = v r^2.

    Squaring ``E^2 - mu^2 = P sqrt(2 v (mu + E))`` and dividing by (E + mu)
    leaves (E - mu)^2 (E + mu) = 2 P^2 v, whose root on the admissible
    half-line |E| > m, v(E + mu) > 0 is unique.
    """
    if v == 0:
        raise NoDiscreteSpectrum("oscillator coupling must be non-zero")
    mu = ch.mu
    P = principal_quantum(ch, "oscillator")

    def q(E):
        return (E - mu) ** 2 * (E + mu) - 2.0 * P * P * v

    E, bracket = _confining_energy(q, v, ch)
    residual = abs((E * E - ch.m**2) * abs(E - mu) - 2.0 * P * P * abs(v))
    return EigenvalueSolution(E, residual, ch.nu, bracket, "unique root with |E| > m and v(E+mu) > 0")


def linear_energy(v: float, ch: Channel, P: float) -> EigenvalueSolution:
    """Dirac energy for V = v r given P = F_{nu L}(1) of the linear shape."""
    if v == 0:
        raise NoDiscreteSpectrum("linear coupling must be non-zero")
    if P <= 0:
        raise ValueError("P must be positive")
    mu = ch.mu

    def q(E):
        return (E - mu) ** 3 * (E + mu) - 4.0 * v * v * P**3

    E, bracket = _confining_energy(q, v, ch)
    residual = abs((E * E - ch.m**2) * (E - mu) ** 2 - 4.0 * v * v * P**3)
    return EigenvalueSolution(E, residual, ch.nu, bracket, "unique root with |E| > m and v(E+mu) > 0")


def coulomb_energy(v: float, ch: Channel) -> EigenvalueSolution:
    """Dirac energy for V = -v/r; requires v mu > 0."""
    mu = ch.mu
    if not v * mu > 0:
        raise NoDiscreteSpectrum("Coulomb spectrum requires v*mu > 0")
    P = principal_quantum(ch, "coulomb-like")
    x = (v / P) ** 2
    E = mu * (1 - x) / (1 + x)
    residual = abs(E * E - mu * mu + x * (mu + E) ** 2)
    return EigenvalueSolution(E, residual, ch.nu, (E, E), "closed form")


def shifted_coulomb_energy(v: float, c: float, ch: Channel) -> EigenvalueSolution:
    """Dirac energy for V = -v/r + c; requires v(c + mu) > 0."""
    mu = ch.mu
    if not v * (c + mu) > 0:
        raise NoDiscreteSpectrum("shifted Coulomb spectrum requires v*(c+mu) > 0")
    P = principal_quantum(ch, "coulomb-like")
    x = (v / P) ** 2
    E = -mu + 2.0 * (mu + c) / (1 + x)
    residual = abs(E * E - mu * mu - 2 * c * (mu + E) + x * (mu + E) ** 2)
    return EigenvalueSolution(E, residual, ch.nu, (E, E), "closed form")


def _kratzer_region(a: float, v: float, c: float, ch: Channel):
    mu = ch.mu
    K2 = (float(ch.kappa) + 0.5) ** 2
    sigma = math.copysign(1.0, v)
    # x = sigma(mu+E) > 0 and y = sigma(2c+mu-E) > 0, so E runs from -mu towards 2c+mu
    E_start, E_end = -mu, 2 * c + mu
    if a != 0:
        # (kappa+1/2)^2 + 2a(mu+E) >= 0
        E_d1 = -mu - K2 / (2 * a)
        if sigma * (E_d1 - E_start) > 0 and sigma * (E_end - E_d1) > 0:
            E_end = E_d1
    return E_start, E_end, sigma, K2


def kratzer_residual(E: float, a: float, v: float, c: float, ch: Channel) -> float:
    """v(mu+E) - (nu + 1/2 + sqrt((kappa+1/2)^2 + 2a(mu+E))) sqrt(2c(mu+E) + mu^2 - E^2)."""
    mu = ch.mu
    K2 = (float(ch.kappa) + 0.5) ** 2
    d1 = K2 + 2 * a * (mu + E)
    d2 = 2 * c * (mu + E) + mu * mu - E * E
    if d1 < 0 or d2 < 0:
        return math.nan
    return v * (mu + E) - (ch.nu + 0.5 + math.sqrt(d1)) * math.sqrt(d2)


def kratzer_energy(a: float, v: float, c: float, ch: Channel) -> EigenvalueSolution:
    """Dirac energy for V = a/r^2 - v/r + c by bracketing the implicit equation in E."""
    if v == 0:
        raise NoDiscreteSpectrum("no discrete spectrum when the Coulomb coupling is zero")
    mu = ch.mu
    if not v * (c + mu) > 0:
        raise NoDiscreteSpectrum("Kratzer spectrum requires v*(c+mu) > 0")
    E_start, E_end, sigma, K2 = _kratzer_region(a, v, c, ch)
    n_half = ch.nu + 0.5

    # common factor sqrt(sigma(mu+E)) removed so both endpoints are regular
    def reduced(E):
        x = max(sigma * (mu + E), 0.0)
        y = max(sigma * (2 * c + mu - E), 0.0)
        d1 = max(K2 + 2 * a * (mu + E), 0.0)
        return abs(v) * math.sqrt(x) - (n_half + math.sqrt(d1)) * math.sqrt(y)

    grid = np.linspace(E_start, E_end, 257)
    values = np.array([reduced(E) for E in grid])
    changes = sign_changes(values)
    exact = np.nonzero(values[1:-1] == 0)[0]
    if changes.size == 0 and exact.size == 0:
        raise NoDiscreteSpectrum("Kratzer equation has no root in the admissible region")
    note = "first root from E = -mu"
    if changes.size + exact.size > 1:
        note += f" ({changes.size + exact.size} candidate roots)"
    i = int(changes[0]) if changes.size else int(exact[0]) + 1
    lo, hi = sorted((grid[i], grid[i + 1])) if changes.size else (grid[i], grid[i])
    E = bracketed_root(reduced, lo, hi) if lo != hi else lo
    residual = abs(kratzer_residual(E, a, v, c, ch))
    return EigenvalueSolution(E, residual, ch.nu, (float(lo), float(hi)), note)


def kratzer_quartic_energy(a: float, v: float, c: float, ch: Channel) -> float:
    """Kratzer energy from the quartic in P obtained by equating the shifted
    Coulomb formula with E = [(P - 1/2 - nu)^2 - (kappa + 1/2)^2]/(2a) - mu.
    """
    if a == 0:
        return shifted_coulomb_energy(v, c, ch).E
    if v == 0:
        raise NoDiscreteSpectrum("no discrete spectrum when the Coulomb coupling is zero")
    mu = ch.mu
    if not v * (c + mu) > 0:
        raise NoDiscreteSpectrum("Kratzer spectrum requires v*(c+mu) > 0")
    n = ch.nu + 0.5
    K2 = (float(ch.kappa) + 0.5) ** 2
    v2 = v * v
    A = 4 * a * (mu + c)
    poly = np.array([1.0, -2 * n, n * n - K2 + v2 - A, -2 * n * v2, (n * n - K2) * v2])
    roots = np.roots(poly)
    scale = max(1.0, float(np.max(np.abs(roots))))
    real = sorted(r.real for r in roots if abs(r.imag) <= 1e-7 * scale and r.real > n)
    if not real:
        raise NoDiscreteSpectrum("quartic has no admissible root")
    P = real[0]
    dpoly = np.polyder(poly)
    for _ in range(5):
        step = np.polyval(poly, P) / np.polyval(dpoly, P)
        P -= step
        if abs(step) < 1e-16 * P:
            break
    return -mu + 2 * (mu + c) / (1 + v2 / (P * P))


def log_u1(ch: Channel, e_nuL: float) -> float:
    """Critical u1 > 0 solving -m^2 = u1 (2 e - ln 2) - u1 ln u1 (the E = 0 point)."""
    C = 2 * e_nuL - math.log(2)
    m2 = ch.m**2
    u_peak = math.exp(C)
    if m2 == 0:
        return u_peak

    def fn(u):
        return u * (C - math.log(u)) + m2

    try:
        hi = expand_upward(lambda u: -fn(u), u_peak, u_peak)
        return bracketed_root(fn, u_peak, hi)
    except NumericalFailure as exc:
        raise NumericalFailure(f"u1 root-find failed: {exc}") from exc


def log_spectral_region(v: float, ch: Channel, u1: float) -> SpectralRegion:
    """Interval of E with 0 < v(mu + E) < u1."""
    if v == 0:
        raise ValueError("log coupling must be non-zero")
    if u1 <= 0:
        raise ValueError("u1 must be positive")
    mu = ch.mu
    ends = sorted((-mu, u1 / v - mu))
    return SpectralRegion(ends[0], ends[1])


def log_energy(v: float, ch: Channel, e1: float, u1: float = None) -> EigenvalueSolution:
    """Dirac energy for V = v ln r from E = mu + v[2 e1 - ln 2 - ln(v(mu + E))].

    Solved for u = v(mu + E), which makes the equation
    u - 2 v mu - v^2 (2 e1 - ln 2) + v^2 ln u = 0, increasing in u.
    """
    if v == 0:
        raise NoDiscreteSpectrum("log coupling must be non-zero")
    mu = ch.mu
    C = 2 * e1 - math.log(2)
    if u1 is None:
        u1 = log_u1(ch, e1)
    region = log_spectral_region(v, ch, u1)

    def phi(u):
        return u - 2 * v * mu - v * v * C + v * v * math.log(u)

    eps = 1e-12 * u1
    scan = np.linspace(eps, u1, 1024)
    if sign_changes([phi(u) for u in scan]).size > 1:
        raise NumericalFailure("log equation changes sign more than once")
    # phi(u1) = (u1 - v mu)^2 / u1 >= 0 analytically; a tiny negative value is rounding at v mu = u1
    f_u1 = phi(u1)
    if f_u1 < -1e-9 * max(1.0, u1, v * v):
        raise NoDiscreteSpectrum("no root with u < u1")
    if f_u1 <= 0:
        u = u1
    elif phi(eps) > 0:
        # root below eps*u1: coupling so weak that E sits on -mu within rounding
        u = bracketed_root(phi, 0.5 * eps * math.ulp(1.0), eps)
    else:
        u = bracketed_root(phi, eps, u1)
    E = mu + v * (C - math.log(u))
    residual = abs(E - mu - v * (C - math.log(v * (mu + E)))) if v * (mu + E) > 0 else math.inf
    return EigenvalueSolution(E, residual, ch.nu, (region.E_lo, region.E_hi), "u-bracket inside the u1 region")


def laguerre(n: int, alpha: float, x):
    """Generalized Laguerre polynomial by upward three-term recurrence."""
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev
    cur = 1.0 + alpha - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
    return cur


def _coulomb_parts(v: float, ch: Channel, E: float):
    mu = ch.mu
    if mu * mu <= E * E:
        raise DomainError("Coulomb wavefunction needs mu^2 > E^2")
    L = ch.L
    beta = math.sqrt(mu * mu - E * E)
    kappa = float(ch.kappa)
    nu = ch.nu

    def big(r):
        r = np.asarray(r, dtype=float)
        return r ** (L + 1) * np.exp(-beta * r) * laguerre(nu, 2 * L + 1, 2 * beta * r)

    def small(r):
        # s (psi' + kappa psi / r) / (mu + E); the r^L factor cancels 1/r analytically
        r = np.asarray(r, dtype=float)
        x = 2 * beta * r
        lag = laguerre(nu, 2 * L + 1, x)
        dlag = -laguerre(nu - 1, 2 * L + 2, x) if nu > 0 else np.zeros_like(x)
        d = r**L * np.exp(-beta * r) * ((L + 1 + kappa - beta * r) * lag + 2 * beta * r * dlag)
        return ch.s * d / (mu + E)

    return big, small


def _coulomb_norm(v: float, ch: Channel, E: float) -> float:
    big, small = _coulomb_parts(v, ch, E)
    total = sum(quad(lambda r: float(f(r)) ** 2, 0, np.inf, limit=200)[0] for f in (big, small))
    return 1.0 / math.sqrt(total)


def coulomb_components(v: float, ch: Channel, E: float, r):
    """(psi1, psi2) of the Coulomb state, jointly normalized to unit norm."""
    big, small = _coulomb_parts(v, ch, E)
    c = _coulomb_norm(v, ch, E)
    main, other = c * big(r), c * small(r)
    return (main, other) if ch.s == 1 else (other, main)


def coulomb_wavefunction(v: float, ch: Channel, E: float, r):
    """c r^{L+1} exp(-beta r) L_nu^{2L+1}(2 beta r), beta = sqrt(mu^2 - E^2).

    This is the component obeying the combined equation (psi1 for spin,
    psi2 for pseudo-spin symmetry); c makes psi1^2 + psi2^2 integrate to 1.
    """
    big, _ = _coulomb_parts(v, ch, E)
    return _coulomb_norm(v, ch, E) * big(r)
