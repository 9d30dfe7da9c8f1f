"""Numerical oracle for the combined Dirac radial equation with any potential.

For a trial energy E the combined equation is a Schrodinger problem with
potential 2(E + mu) V(r); the Dirac eigenvalue is a root of

    G(E) = F_nu(E) - (E^2 - mu^2)

where F_nu(E) is the shooting eigenvalue with nu nodes. A 1/r^2 part of V
(Kratzer) is folded into the centrifugal term, giving an E-dependent L.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional, Tuple

import numpy as np
from scipy.integrate import simpson

from ._roots import bracketed_root
from .channels import Channel
from .errors import DegenerateEnergy, NoBoundState, NoDiscreteSpectrum, NumericalFailure
from .exact_spectra import EigenvalueSolution, log_spectral_region, log_u1
from .potentials import Log, PotentialModel
from .radial_solver import DEFAULT_R_MAX, RadialGrid, ShootingResult, log_e1, solve_radial

LADDER_START = 1e-3
LADDER_STEPS = 30
REGION_SHRINK = 1e-9


@dataclass
class DiracSolution:
    E: float
    r: np.ndarray = field(repr=False)
    psi1: np.ndarray = field(repr=False)
    psi2: np.ndarray = field(repr=False)
    norm_defect: float
    residuals: Tuple[float, float]


class DerivativeIdentity(NamedTuple):
    lhs: float
    rhs: float


@dataclass(frozen=True)
class PotentialFamily:
    """One-parameter family a -> V(., a) with optional analytic dV/da."""

    member: Callable[[float], PotentialModel]
    derivative: Optional[Callable[[np.ndarray, float], np.ndarray]] = None
    label: str = "family"

    def __call__(self, a: float) -> PotentialModel:
        return self.member(a)

    def dV_da(self, r, a: float, step: float = 1e-5):
        if self.derivative is not None:
            return self.derivative(r, a)
        return (self.member(a + step)(r) - self.member(a - step)(r)) / (2 * step)


def _orientation(V: PotentialModel) -> float:
    """Sign sigma with sigma (E + mu) > 0 on the admissible half-line."""
    v = getattr(V, "v", 1.0)
    return 1.0 if v >= 0 else -1.0


class _Oracle:
    def __init__(self, V: PotentialModel, ch: Channel, grid: Optional[RadialGrid], tol: float):
        self.V = V
        self.ch = ch
        self.grid = grid
        self.tol = tol
        self.mu = ch.mu
        self.k2 = (float(ch.kappa) + 0.5) ** 2
        self.a = V.inverse_square()
        self.r_max = DEFAULT_R_MAX

    def effective_L(self, E: float) -> float:
        d = self.k2 + 2 * (E + self.mu) * self.a
        if d < 0:
            raise NoBoundState("inverse-square attraction below the fall-to-centre limit")
        return math.sqrt(d) - 0.5

    def inner(self, E: float) -> ShootingResult:
        w = 2.0 * (E + self.mu)
        res = solve_radial(
            lambda r: w * self.V.regular(r),
            self.effective_L(E),
            self.ch.nu,
            grid=self.grid,
            tol=self.tol,
            r_max=self.r_max,
        )
        if self.grid is None:
            self.r_max = max(DEFAULT_R_MAX, 0.5 * res.grid.r_max)
        return res

    def G(self, E: float) -> float:
        return self.inner(E).eigenvalue - (E * E - self.mu * self.mu)

    def safe_G(self, E: float) -> Optional[float]:
        try:
            return self.G(E)
        except NoBoundState:
            return None


def _default_limits(V: PotentialModel, ch: Channel, e1: Optional[float]):
    """Admissible open interval (lo, hi) for E and the v -> 0 limit point."""
    mu = ch.mu
    sigma = _orientation(V)
    if isinstance(V, Log):
        if e1 is None:
            e1 = log_e1(ch.L, ch.nu)
        region = log_spectral_region(V.v, ch, log_u1(ch, e1))
        width = region.E_hi - region.E_lo
        lo, hi = region.E_lo + REGION_SHRINK * width, region.E_hi - REGION_SHRINK * width
    elif sigma > 0:
        lo, hi = -mu, math.inf
    else:
        lo, hi = -math.inf, -mu
    start = mu if lo < mu < hi else -mu
    return lo, hi, min(max(start, lo), hi)


def _ladder_bracket(oracle: _Oracle, lo: float, hi: float, start: float):
    """Walk outward from ``start`` on a geometric ladder until G changes sign.

    Near a finite end of the interval the ladder halves the remaining gap
    instead of stepping past it.
    """
    scale = max(1.0, oracle.ch.m)
    g0 = oracle.safe_G(start) if lo < start < hi else None
    last = {+1: (start, g0), -1: (start, g0)}
    step = {+1: LADDER_START * scale, -1: LADDER_START * scale}
    open_dirs = [d for d in (-1, +1) if (start > lo if d < 0 else start < hi)]
    for _ in range(2 * LADDER_STEPS):
        for d in list(open_dirs):
            prev_E, prev_g = last[d]
            end = hi if d > 0 else lo
            E = prev_E + d * step[d]
            step[d] *= 2.0
            if not lo < E < hi:
                E = 0.5 * (prev_E + end)
                if abs(end - E) < REGION_SHRINK * scale:
                    open_dirs.remove(d)
                    continue
            g = oracle.safe_G(E)
            if g is not None and prev_g is not None and g * prev_g <= 0:
                return tuple(sorted((prev_E, E)))
            last[d] = (E, g if g is not None else prev_g)
        if not open_dirs:
            break
    raise NoDiscreteSpectrum("G(E) does not change sign on the admissible interval")


def dirac_energy(
    V: PotentialModel,
    ch: Channel,
    grid: Optional[RadialGrid] = None,
    tol: float = 1e-10,
    interval: Optional[Tuple[float, float]] = None,
    e1: Optional[float] = None,
) -> EigenvalueSolution:
    """Dirac eigenvalue of ``V`` in channel ``ch`` by root-finding on G(E)."""
    return _dirac_solve(V, ch, grid, tol, interval, e1)[0]


def _dirac_solve(V, ch, grid, tol, interval, e1):
    oracle = _Oracle(V, ch, grid, tol)
    if interval is not None:
        lo, hi = interval
        g_lo, g_hi = oracle.safe_G(lo), oracle.safe_G(hi)
        if g_lo is None or g_hi is None or g_lo * g_hi > 0:
            raise NoDiscreteSpectrum("G(E) does not change sign on the supplied interval")
        bracket = (lo, hi)
    else:
        lo, hi, start = _default_limits(V, ch, e1)
        if not lo < hi:
            raise NoDiscreteSpectrum("empty admissible interval")
        bracket = _ladder_bracket(oracle, lo, hi, start)
    try:
        E = bracketed_root(oracle.G, *bracket, xtol=tol)
    except NoBoundState as exc:
        raise NumericalFailure(f"inner solve failed inside the bracket: {exc}") from exc
    final = oracle.inner(E)
    residual = abs(final.eigenvalue - (E * E - ch.mu**2))
    sol = EigenvalueSolution(E, residual, final.nodes, bracket, "oracle: root of F(E) - (E^2 - mu^2)")
    return sol, final


def _derivative(y: np.ndarray, h: float) -> np.ndarray:
    """Fourth-order finite-difference derivative on a uniform grid."""
    d = np.empty_like(y)
    d[2:-2] = (y[:-4] - 8 * y[1:-3] + 8 * y[3:-1] - y[4:]) / (12 * h)
    d[0] = (-25 * y[0] + 48 * y[1] - 36 * y[2] + 16 * y[3] - 3 * y[4]) / (12 * h)
    d[1] = (-3 * y[0] - 10 * y[1] + 18 * y[2] - 6 * y[3] + y[4]) / (12 * h)
    d[-1] = (25 * y[-1] - 48 * y[-2] + 36 * y[-3] - 16 * y[-4] + 3 * y[-5]) / (12 * h)
    d[-2] = (3 * y[-1] + 10 * y[-2] - 18 * y[-3] + 6 * y[-4] - y[-5]) / (12 * h)
    return d


def reconstruct_components(psi, E: float, ch: Channel, V: PotentialModel, r) -> DiracSolution:
    """Both radial components from the solution ``psi`` of the combined equation."""
    r = np.asarray(r, dtype=float)
    psi = np.asarray(psi, dtype=float)
    h = r[1] - r[0]
    m = ch.m
    k = float(ch.k_d)
    scale = max(1.0, m, abs(E))
    if ch.s == 1:
        if abs(m + E) < 1e-12 * scale:
            raise DegenerateEnergy("m + E vanishes in the spin-symmetric case")
        psi1 = psi
        psi2 = (_derivative(psi1, h) + k * psi1 / r) / (m + E)
    else:
        if abs(m - E) < 1e-12 * scale:
            raise DegenerateEnergy("m - E vanishes in the pseudo-spin-symmetric case")
        psi2 = psi
        psi1 = (_derivative(psi2, h) - k * psi2 / r) / (m - E)
    norm = simpson(psi1**2 + psi2**2, x=r)
    psi1 = psi1 / math.sqrt(norm)
    psi2 = psi2 / math.sqrt(norm)
    norm_defect = abs(simpson(psi1**2 + psi2**2, x=r) - 1.0)

    Vr = V(r)
    S = ch.s * Vr
    d1, d2 = _derivative(psi1, h), _derivative(psi2, h)
    res1 = E * psi1 - (Vr + m + S) * psi1 - (-d2 + k * psi2 / r)
    res2 = E * psi2 - (d1 + k * psi1 / r) - (Vr - m - S) * psi2
    amp = max(np.max(np.abs(psi1)), np.max(np.abs(psi2)))
    # defects on the points where the centered stencil applies; the one-sided end
    # stencils meet k/r ~ 1/r_min at the inner edge and measure nothing useful there
    inner = slice(2, -2)
    residuals = (float(np.max(np.abs(res1[inner])) / amp), float(np.max(np.abs(res2[inner])) / amp))
    return DiracSolution(E, r, psi1, psi2, float(norm_defect), residuals)


def dirac_state(
    V: PotentialModel,
    ch: Channel,
    grid: Optional[RadialGrid] = None,
    tol: float = 1e-10,
    interval: Optional[Tuple[float, float]] = None,
    e1: Optional[float] = None,
) -> DiracSolution:
    """Eigenvalue plus normalized components (psi1, psi2) on the solver grid."""
    sol, final = _dirac_solve(V, ch, grid, tol, interval, e1)
    return reconstruct_components(final.psi, sol.E, ch, V, final.r)


def energy_derivative_identity(
    family: PotentialFamily,
    a: float,
    ch: Channel,
    grid: Optional[RadialGrid] = None,
    tol: float = 1e-12,
    delta: Optional[float] = None,
) -> DerivativeIdentity:
    """Finite-difference E'(a) against 2 (psi, dV/da psi).

    ``psi`` is the component obeying the combined equation (psi1 for spin,
    psi2 for pseudo-spin symmetry) under the joint unit normalization. The
    difference quotient is Richardson-extrapolated from steps delta and
    delta/2.
    """
    if delta is None:
        delta = 1e-4 * max(1.0, abs(a))

    def E_at(x):
        return dirac_energy(family(x), ch, grid=grid, tol=tol).E

    d_full = (E_at(a + delta) - E_at(a - delta)) / (2 * delta)
    d_half = (E_at(a + delta / 2) - E_at(a - delta / 2)) / delta
    lhs = (4 * d_half - d_full) / 3

    state = dirac_state(family(a), ch, grid=grid, tol=tol)
    main = state.psi1 if ch.s == 1 else state.psi2
    rhs = 2.0 * simpson(main**2 * family.dV_da(state.r, a), x=state.r)
    return DerivativeIdentity(float(lhs), float(rhs))
