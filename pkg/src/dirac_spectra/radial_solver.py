"""Shooting solver for the generic radial Schrodinger problem

    -psi'' + (L(L+1)/r**2 + v f(r)) psi = F psi,   psi(0) = 0,  psi(inf) = 0.

Eigenvalues are bracketed by node counting of the outward Numerov solution and
then refined on the Wronskian of an outward and an inward solution matched at
the outermost classical turning point. The same engine supplies the linear and
log constants and is the inner solve of the Dirac oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional

import numpy as np
from scipy.integrate import simpson
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq

from ._numerov import count_nodes, integrate_inward, integrate_outward
from .errors import DomainError, NoBoundState, NumericalFailure

DEFAULT_R_MIN = 1e-6
DEFAULT_H = 0.005
DEFAULT_R_MAX = 20.0
DEFAULT_TOL = 1e-10
# psi(r_max) ~ exp(-TAIL_EXPONENT) relative to the turning-point amplitude
TAIL_EXPONENT = 30.0
MAX_R_MAX = 2000.0
MATCH_TOL = 1e-6
LOG_HANDOVER = 50
LOG_START_R = 1e-9

RadialFunction = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class RadialGrid:
    """Uniform grid on [r_min, r_max] with n points."""

    r_min: float
    r_max: float
    n: int

    def __post_init__(self):
        if not 0 < self.r_min < self.r_max:
            raise ValueError("need 0 < r_min < r_max")
        if self.n < 1000:
            raise ValueError("a radial grid needs at least 1000 points")

    @classmethod
    def with_spacing(cls, r_max: float, h: float = DEFAULT_H, r_min: float = DEFAULT_R_MIN) -> "RadialGrid":
        n = max(1000, int(math.ceil((r_max - r_min) / h)) + 1)
        return cls(r_min, r_max, n)

    @property
    def h(self) -> float:
        return (self.r_max - self.r_min) / (self.n - 1)

    @property
    def r(self) -> np.ndarray:
        return np.linspace(self.r_min, self.r_max, self.n)


@dataclass
class ShootingResult:
    eigenvalue: float
    nodes: int
    mismatch: float
    converged: bool
    grid: RadialGrid
    psi: np.ndarray = field(repr=False)

    @property
    def r(self) -> np.ndarray:
        return self.grid.r


def node_count(samples) -> int:
    """Number of strict sign changes in ``samples``; exact zeros are skipped."""
    return int(count_nodes(np.asarray(samples, dtype=float)))


class _Shooter:
    """Numerov shooting for a fixed potential on a fixed grid."""

    def __init__(self, grid: RadialGrid, U: np.ndarray, L: float, potential: Optional[RadialFunction] = None):
        self.grid = grid
        self.h = grid.h
        self.r = grid.r
        self.U = U
        self.L = L
        self.potential = potential
        r = self.r
        if potential is None:
            # bare potential array: seed the recurrence with r^(L+1) at the first grid points
            self.start = 0
            self.y0, self.y1 = r[0] ** (L + 1.0), r[1] ** (L + 1.0)
            self.x = None
        else:
            # g y ~ r^(L-1) is singular at the origin and spoils Numerov on the uniform
            # grid; cover [LOG_START_R, r_k] on a log grid instead and hand over at k
            k = min(LOG_HANDOVER, r.size - 3)
            self.start = k
            self.dx = math.log(r[k + 1] / r[k])
            self.x, self.rx, self.Vx = self._log_grid(1)

    def _log_grid(self, refine: int):
        # geometric grid ending at r_k, r_{k+1}, with spacing dx / refine
        dx = self.dx / refine
        xk = math.log(self.r[self.start])
        n_back = int(math.ceil((xk - math.log(LOG_START_R)) / dx))
        x = xk + dx * np.arange(-n_back, refine + 1)
        rx = np.exp(x)
        return x, rx, np.asarray(self.potential(rx), dtype=float)

    def _seed(self, F: float):
        if self.x is None:
            return self.y0, self.y1
        y = self._log_solution(F, self.x, self.rx, self.Vx, self.dx)
        return y[-2] * math.sqrt(self.rx[-2]), y[-1] * math.sqrt(self.rx[-1])

    def _log_solution(self, F: float, x, rx, Vx, dx) -> np.ndarray:
        # psi = sqrt(r) y turns the radial equation into y'' = [(L + 1/2)^2 + r^2 (V - F)] y in x = ln r
        gx = (self.L + 0.5) ** 2 + rx**2 * (Vx - F)
        a = self.L + 0.5
        y, _ = integrate_outward(gx, dx, math.exp(a * x[0]), math.exp(a * x[1]), gx.size - 1)
        return y

    def nodes(self, F: float) -> int:
        g = self.U - F
        y0, y1 = self._seed(F)
        _, nodes = integrate_outward(g, self.h, y0, y1, g.size - 1, self.start)
        return int(nodes)

    def match_index(self, F: float) -> int:
        allowed = np.nonzero(self.U < F)[0]
        n = self.U.size
        if allowed.size == 0:
            return n // 2
        return int(min(max(allowed[-1], self.start + 2), n - 3))

    def _pair(self, F: float, m: int):
        g = self.U - F
        y0, y1 = self._seed(F)
        out, _ = integrate_outward(g, self.h, y0, y1, m + 1, self.start)
        kappa = math.sqrt(max(g[-1], 0.0))
        inw = integrate_inward(g, self.h, math.exp(-kappa * self.h), 1.0, m - 1)
        return out, inw

    def wronskian(self, F: float, m: int) -> float:
        out, inw = self._pair(F, m)
        a0, a1 = out[m], out[m + 1]
        b0, b1 = inw[m], inw[m + 1]
        scale = math.hypot(a0, a1) * math.hypot(b0, b1)
        return (a1 * b0 - a0 * b1) / scale

    def eigenfunction(self, F: float, m: int):
        out, inw = self._pair(F, m)
        if self.start > 0:
            # fill the hand-over region from a finer log-grid solution
            refine = 8
            x, rx, Vx = self._log_grid(refine)
            psi = self._log_solution(F, x, rx, Vx, self.dx / refine) * np.sqrt(rx)
            spline = CubicSpline(x, psi * (out[self.start] / psi[-1 - refine]))
            out[: self.start] = spline(np.log(self.r[: self.start]))
        if out[m] == 0.0 or inw[m] == 0.0:
            raise NumericalFailure("eigenfunction vanishes at the matching point")
        mismatch = ((out[m + 1] - out[m - 1]) / out[m] - (inw[m + 1] - inw[m - 1]) / inw[m]) / (2 * self.h)
        inw = inw * (out[m] / inw[m])
        psi = np.concatenate([out[: m + 1], inw[m + 1:]])
        norm = math.sqrt(simpson(psi * psi, x=self.r))
        psi = psi / norm
        if psi[np.argmax(np.abs(psi[: m + 1]))] < 0:
            psi = -psi
        return psi, mismatch


def _solve_on_grid(grid: RadialGrid, U: np.ndarray, L: float, nu: int, tol: float, potential=None):
    sh = _Shooter(grid, U, L, potential)
    # start the bracket off the singular first points
    f_lo = float(np.min(U[10:]))
    if sh.nodes(f_lo) > nu:
        f_lo = float(np.min(U))
    f_hi = f_lo + 1.0
    span = 1.0
    for _ in range(200):
        if sh.nodes(f_hi) > nu:
            break
        f_lo = f_hi
        span *= 2.0
        f_hi = f_lo + span
    else:
        raise NoBoundState(f"could not bracket the state with {nu} nodes")

    # node-count bisection down to a bracket holding exactly this state
    n_lo = sh.nodes(f_lo)
    for _ in range(200):
        if n_lo == nu and f_hi - f_lo < 1e-3 * max(1.0, abs(f_lo)):
            break
        mid = 0.5 * (f_lo + f_hi)
        if mid in (f_lo, f_hi):
            break
        k = sh.nodes(mid)
        if k > nu:
            f_hi = mid
        else:
            f_lo, n_lo = mid, k
    if n_lo != nu:
        raise NoBoundState(f"no state with {nu} nodes on the grid")

    m = sh.match_index(0.5 * (f_lo + f_hi))
    w_lo, w_hi = sh.wronskian(f_lo, m), sh.wronskian(f_hi, m)
    if w_lo * w_hi > 0:
        # turning point moved inside the bracket; fall back to pure bisection
        while f_hi - f_lo > tol:
            mid = 0.5 * (f_lo + f_hi)
            if sh.nodes(mid) > nu:
                f_hi = mid
            else:
                f_lo = mid
        F = 0.5 * (f_lo + f_hi)
    else:
        try:
            F = brentq(sh.wronskian, f_lo, f_hi, args=(m,), xtol=tol, maxiter=200)
        except RuntimeError as exc:
            raise NumericalFailure(str(exc)) from exc
    m = sh.match_index(F)
    psi, mismatch = sh.eigenfunction(F, m)
    return F, psi, mismatch


def _tail_exponent(r: np.ndarray, U: np.ndarray, F: float) -> float:
    allowed = np.nonzero(U < F)[0]
    if allowed.size == 0:
        return 0.0
    start = allowed[-1]
    if start >= r.size - 2:
        return 0.0
    k = np.sqrt(np.maximum(U[start:] - F, 0.0))
    return float(np.trapezoid(k, r[start:]))


def solve_radial(
    potential: RadialFunction,
    L: float,
    nu: int,
    grid: Optional[RadialGrid] = None,
    tol: float = DEFAULT_TOL,
    r_max: float = DEFAULT_R_MAX,
    h: float = DEFAULT_H,
) -> ShootingResult:
    """Eigenvalue with ``nu`` nodes of ``-psi'' + (L(L+1)/r^2 + potential) psi``.

    With an explicit ``grid`` the problem is solved on that grid only.
    Otherwise ``r_max`` is extended until the decaying tail is below
    ``exp(-TAIL_EXPONENT)`` at the outer boundary.
    """
    if nu < 0:
        raise ValueError("nu must be non-negative")
    if L < -0.5:
        raise DomainError("L must be >= -1/2")
    adaptive = grid is None
    while True:
        if adaptive:
            grid = RadialGrid.with_spacing(r_max, h)
        r = grid.r
        U = L * (L + 1.0) / (r * r) + potential(r)
        F, psi, mismatch = _solve_on_grid(grid, U, L, nu, tol, potential)
        if not adaptive:
            break
        tail = _tail_exponent(r, U, F)
        if tail >= TAIL_EXPONENT:
            break
        if r_max >= MAX_R_MAX:
            raise NoBoundState(f"state with {nu} nodes is not localized within r < {MAX_R_MAX}")
        k_end = math.sqrt(max(U[-1] - F, 0.0))
        grow = (TAIL_EXPONENT - tail) / k_end * 1.2 if k_end > 0 else 0.5 * r_max
        r_max = min(MAX_R_MAX, r_max + min(max(grow, 0.25 * r_max), r_max))
    nodes = node_count(psi)
    converged = nodes == nu and abs(mismatch) <= MATCH_TOL
    return ShootingResult(F, nodes, float(mismatch), converged, grid, psi)


def schrodinger_eigenvalue(
    shape: RadialFunction,
    v: float,
    L: float,
    nu: int,
    grid: Optional[RadialGrid] = None,
    tol: float = DEFAULT_TOL,
) -> ShootingResult:
    """F_{nu L}(v) for the potential shape ``f`` with coupling ``v``."""
    return solve_radial(lambda r: v * shape(r), L, nu, grid=grid, tol=tol)


@lru_cache(maxsize=None)
def linear_P(L: float, nu: int) -> float:
    """F_{nu L}(1) for f(r) = r, so that F_{nu L}(v) = P v**(2/3)."""
    return schrodinger_eigenvalue(lambda r: r, 1.0, L, nu, tol=1e-12).eigenvalue


@lru_cache(maxsize=None)
def log_e1(L: float, nu: int) -> float:
    """e_{nu L}(1) = F_{nu L}(1) for f(r) = ln r."""
    return schrodinger_eigenvalue(np.log, 1.0, L, nu, tol=1e-12).eigenvalue
