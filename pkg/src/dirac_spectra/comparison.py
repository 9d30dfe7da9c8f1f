"""Numerical checks of the comparison theorem for Dirac spectra.

If V1(r) <= V2(r) for all r then E1 <= E2 in every channel where both
potentials have a discrete state. Pointwise order is certified on a finite
log-spaced grid, which is a practical surrogate for the global hypothesis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .channels import Channel, SymmetryMode, principal_quantum
from .dirac_solver import PotentialFamily, energy_derivative_identity
from .errors import NoBoundState, NoDiscreteSpectrum, NotComparable
from .potentials import (
    Coulomb,
    Custom,
    Kratzer,
    Linear,
    Log,
    Oscillator,
    PotentialModel,
    ShiftedCoulomb,
    interpolate,
)
from .radial_solver import RadialGrid
from .spectrum import energy

ORDER_TOL = 1e-6
SAMPLE_R = np.logspace(-4, 3, 1000)

EnergySolver = Callable[[PotentialModel, Channel], float]


@dataclass
class ComparisonReport:
    pointwise_ordered: bool
    channels_tested: List[Channel] = field(default_factory=list)
    energies: List[Tuple[float, float]] = field(default_factory=list)
    violations: List[Tuple[Channel, float, float, float]] = field(default_factory=list)
    skipped: List[Tuple[Channel, str]] = field(default_factory=list)
    grid_note: str = "pointwise order checked on 1000 log-spaced r in [1e-4, 1e3]"

    @property
    def passed(self) -> bool:
        return self.pointwise_ordered and not self.violations


@dataclass
class FamilyScan:
    a_grid: np.ndarray
    energies: np.ndarray
    derivative_signs: np.ndarray

    def monotone(self, tol: float = 1e-8) -> bool:
        return bool(np.all(self.derivative_signs >= -tol))


@dataclass(frozen=True)
class DerivativeCheck:
    a: float
    lhs: float
    rhs: float
    dV_sign: int
    sign_ok: bool
    match_ok: bool

    @property
    def ok(self) -> bool:
        return self.sign_ok and self.match_ok


def pointwise_ordered(V1: PotentialModel, V2: PotentialModel, r=SAMPLE_R) -> bool:
    a, b = np.asarray(V1(r), dtype=float), np.asarray(V2(r), dtype=float)
    slack = 1e-12 * np.maximum(1.0, np.maximum(np.abs(a), np.abs(b)))
    return bool(np.all(a <= b + slack))


def default_solver(grid: Optional[RadialGrid] = None, tol: float = 1e-10) -> EnergySolver:
    """Closed forms where available, the shooting oracle otherwise."""

    def solve(V, ch):
        return energy(V, ch, grid=grid, tol=tol).E

    return solve


def verify_ordering(
    V1: PotentialModel,
    V2: PotentialModel,
    channels: Sequence[Channel],
    grid: Optional[RadialGrid] = None,
    tol: float = ORDER_TOL,
    solver: Optional[EnergySolver] = None,
) -> ComparisonReport:
    """Check E1 <= E2 + tol in every channel for a pointwise-ordered pair."""
    if not pointwise_ordered(V1, V2):
        raise NotComparable("V1 <= V2 fails on the sample grid")
    solve = solver or default_solver(grid)
    report = ComparisonReport(True)
    for ch in channels:
        try:
            E1, E2 = solve(V1, ch), solve(V2, ch)
        except (NoDiscreteSpectrum, NoBoundState) as exc:
            report.skipped.append((ch, str(exc)))
            continue
        report.channels_tested.append(ch)
        report.energies.append((E1, E2))
        if E1 > E2 + tol:
            report.violations.append((ch, E1, E2, E2 - E1))
    return report


def family_scan(
    V1: PotentialModel,
    V2: PotentialModel,
    ch: Channel,
    n_a: int = 11,
    grid: Optional[RadialGrid] = None,
    solver: Optional[EnergySolver] = None,
) -> FamilyScan:
    """E(a) for V(a) = V1 + a (V2 - V1) on a uniform grid in [0, 1]."""
    if n_a < 2:
        raise ValueError("n_a must be at least 2")
    if not pointwise_ordered(V1, V2):
        raise NotComparable("family is not increasing in a on the sample grid")
    solve = solver or default_solver(grid)
    a_grid = np.linspace(0.0, 1.0, n_a)
    E = np.array([solve(interpolate(V1, V2, float(a)), ch) for a in a_grid])
    return FamilyScan(a_grid, E, np.diff(E) / np.diff(a_grid))


def derivative_sign_check(
    family: PotentialFamily,
    a_samples: Sequence[float],
    ch: Channel,
    grid: Optional[RadialGrid] = None,
    rel_tol: float = 1e-4,
    zero_tol: float = 1e-8,
) -> List[DerivativeCheck]:
    """E'(a) has the sign of dV/da, and the finite difference matches 2 <psi, dV/da psi>."""
    out = []
    for a in a_samples:
        dV = np.asarray(family.dV_da(SAMPLE_R, a), dtype=float) * np.ones_like(SAMPLE_R)
        if np.all(np.abs(dV) <= zero_tol):
            sign = 0
        elif np.all(dV >= -zero_tol):
            sign = 1
        elif np.all(dV <= zero_tol):
            sign = -1
        else:
            sign = 2  # no definite sign, nothing to assert
        lhs, rhs = energy_derivative_identity(family, a, ch, grid=grid)
        scale = max(abs(lhs), abs(rhs), 1e-3)
        match_ok = abs(lhs - rhs) <= rel_tol * scale
        if sign == 0:
            sign_ok = abs(lhs) <= 1e-6
        elif sign in (1, -1):
            sign_ok = sign * lhs >= -zero_tol
        else:
            sign_ok = True
        out.append(DerivativeCheck(float(a), lhs, rhs, sign, bool(sign_ok), bool(match_ok)))
    return out


# Built-in families with analytic dV/da


def coulomb_strength_family(c: float = 0.0) -> PotentialFamily:
    """a -> -a/r + c."""
    return PotentialFamily(lambda a: ShiftedCoulomb(a, c), lambda r, a: -1.0 / np.asarray(r, dtype=float),
                           label=f"coulomb-strength(c={c:g})")


def constant_shift_family(v: float) -> PotentialFamily:
    """a -> -v/r + a."""
    return PotentialFamily(lambda a: ShiftedCoulomb(v, a), lambda r, a: np.ones_like(np.asarray(r, dtype=float)),
                           label=f"constant-shift(v={v:g})")


def shifted_coulomb_derivative(v: float, c: float, ch: Channel) -> float:
    """Closed-form dE/dv for V = -v/r + c."""
    P = principal_quantum(ch, "coulomb-like")
    x = v * v / (P * P)
    return -4.0 * (ch.mu + c) * v / (P * P * (1.0 + x) ** 2)


# Built-in corpus


@dataclass(frozen=True)
class CorpusCase:
    name: str
    V1: PotentialModel
    V2: PotentialModel
    channels: Tuple[Channel, ...]


def _channels(mode: SymmetryMode, nus=(0, 1, 2), m: float = 1.0) -> Tuple[Channel, ...]:
    return tuple(
        Channel(d=3, j2=j2, tau=tau, mode=mode, nu=nu, m=m)
        for j2 in (1, 3)
        for tau in (1, -1)
        for nu in nus
    )


def _log_shift(v: float, c: float) -> Custom:
    # v (ln r + c) with the coupling sign kept in v
    return Custom(lambda r: np.log(r) + c, v, label=f"log+{c:g}")


def builtin_corpus() -> List[CorpusCase]:
    spin, pseudo = SymmetryMode.SPIN, SymmetryMode.PSEUDO
    all_spin = _channels(spin)
    all_pseudo = _channels(pseudo)
    few_spin = _channels(spin, nus=(0, 1))[:4]
    few_pseudo = _channels(pseudo, nus=(0, 1))[:4]
    return [
        CorpusCase("coulomb 2/r vs 1/r", Coulomb(2.0), Coulomb(1.0), all_spin),
        CorpusCase("coulomb 1/r vs 0.5/r", Coulomb(1.0), Coulomb(0.5), all_spin),
        CorpusCase("coulomb pseudo", Coulomb(-1.0), Coulomb(-2.0), all_pseudo),
        CorpusCase("coulomb identical", Coulomb(1.0), Coulomb(1.0), all_spin),
        CorpusCase("shift 0 vs 0.5", ShiftedCoulomb(1.0, 0.0), ShiftedCoulomb(1.0, 0.5), all_spin),
        CorpusCase("shift -0.3 vs 0.2", ShiftedCoulomb(1.0, -0.3), ShiftedCoulomb(1.0, 0.2), all_spin),
        CorpusCase("coulomb vs shifted", Coulomb(1.5), ShiftedCoulomb(1.0, 0.1), all_spin),
        CorpusCase("shift pseudo", ShiftedCoulomb(-1.0, -0.4), ShiftedCoulomb(-1.0, 0.0), all_pseudo),
        CorpusCase("coulomb vs kratzer", Coulomb(1.0), Kratzer(0.1, 1.0, 0.0), all_spin),
        CorpusCase("kratzer a", Kratzer(0.1, 1.0, 0.0), Kratzer(0.3, 1.0, 0.2), all_spin),
        CorpusCase("oscillator 0.5 vs 1", Oscillator(0.5), Oscillator(1.0), all_spin),
        CorpusCase("oscillator pseudo", Oscillator(-1.0), Oscillator(-0.5), all_pseudo),
        CorpusCase("linear 0.5 vs 1", Linear(0.5), Linear(1.0), all_spin),
        CorpusCase("log 1 vs 2 crossing", Log(1.0), Log(2.0), all_spin),
        CorpusCase("tangent below log", ShiftedCoulomb(1.0, 1.0), Log(1.0), all_spin),
        CorpusCase("tangent above pseudo log", Log(-1.0), ShiftedCoulomb(-1.0, -1.0), all_pseudo),
        CorpusCase("log vs log+0.1", Log(1.0), _log_shift(1.0, 0.1), few_spin),
        CorpusCase("pseudo log vs log-0.2", Log(-1.0), _log_shift(-1.0, -0.2), few_pseudo),
    ]


@dataclass
class CaseOutcome:
    case: CorpusCase
    status: str  # PASS, FAIL or NOT-COMPARABLE
    report: Optional[ComparisonReport] = None

    def summary(self) -> str:
        if self.report is None:
            return f"{self.status} {self.case.name}"
        r = self.report
        worst = min((e2 - e1 for e1, e2 in r.energies), default=math.nan)
        return (f"{self.status} {self.case.name} tested={len(r.channels_tested)} "
                f"skipped={len(r.skipped)} violations={len(r.violations)} min_margin={worst:.3e}")


def run_corpus(cases: Sequence[CorpusCase], solver: Optional[EnergySolver] = None,
               tol: float = ORDER_TOL) -> List[CaseOutcome]:
    out = []
    for case in cases:
        try:
            report = verify_ordering(case.V1, case.V2, case.channels, tol=tol, solver=solver)
        except NotComparable:
            out.append(CaseOutcome(case, "NOT-COMPARABLE"))
            continue
        out.append(CaseOutcome(case, "PASS" if report.passed else "FAIL", report))
    return out
