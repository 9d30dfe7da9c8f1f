"""Acceptance checks, one test per criterion, each printing a PASS/FAIL line."""

import math
import time

import numpy as np

from dirac_spectra.channels import Channel, principal_quantum
from dirac_spectra.cli import figure1_rows
from dirac_spectra.comparison import builtin_corpus, coulomb_strength_family, family_scan, run_corpus
from dirac_spectra.dirac_solver import dirac_energy, dirac_state, energy_derivative_identity
from dirac_spectra.errors import NoDiscreteSpectrum
from dirac_spectra.exact_spectra import (
    coulomb_energy,
    kratzer_energy,
    kratzer_quartic_energy,
    log_energy,
    log_u1,
    oscillator_energy,
    shifted_coulomb_energy,
)
from dirac_spectra.potentials import Coulomb, Custom, Log, Oscillator, ShiftedCoulomb
from dirac_spectra.radial_solver import linear_P, log_e1, node_count, schrodinger_eigenvalue

SPIN = Channel(d=3, j2=1, tau=1, mode="spin", nu=0, m=1.0)


def test_criterion_01_linear_constant(criterion):
    linear_P.cache_clear()
    t = time.perf_counter()
    P = linear_P(1, 0)
    dt = time.perf_counter() - t
    err = abs(P - 3.3612545)
    criterion(1, "linear P(L=1, nu=0)", err <= 1e-5 and dt < 5, f"P={P:.10f} err={err:.1e} t={dt:.2f}s")


def test_criterion_02_log_constant(criterion):
    log_e1.cache_clear()
    t = time.perf_counter()
    e1 = log_e1(1, 0)
    dt = time.perf_counter() - t
    err = abs(e1 - 1.6411353)
    criterion(2, "log e(1) for L=1, nu=0", err <= 1e-5 and dt < 5, f"e1={e1:.10f} err={err:.1e} t={dt:.2f}s")


def test_criterion_03_critical_coupling(criterion):
    e1 = log_e1(1, 0)
    t = time.perf_counter()
    u1 = log_u1(SPIN, e1)
    dt = time.perf_counter() - t
    err = abs(u1 - 14.28389)
    criterion(3, "critical coupling u1", err <= 1e-3 and dt < 1, f"u1={u1:.6f} err={err:.1e} t={dt*1e3:.1f}ms")


def test_criterion_04_oracle_equivalence(criterion):
    t = time.perf_counter()
    worst = 0.0
    cases = 0
    for mode, sign in (("spin", 1.0), ("pseudo", -1.0)):
        for nu in (0, 1):
            ch = Channel(mode=mode, nu=nu)
            for v in (0.5, 1.0, 2.0):
                w = sign * v
                worst = max(worst, abs(dirac_energy(Coulomb(w), ch).E - coulomb_energy(w, ch).E))
                cases += 1
            for v in (0.5, 1.0):
                w = sign * v
                worst = max(worst, abs(dirac_energy(Oscillator(w), ch).E - oscillator_energy(w, ch).E))
                cases += 1
    dt = time.perf_counter() - t
    criterion(4, "oracle vs closed forms", worst <= 1e-5 and dt < 60,
              f"{cases} cases max|dE|={worst:.1e} t={dt:.1f}s")


def test_criterion_05_figure1(criterion):
    t = time.perf_counter()
    e1 = log_e1(1, 0)
    u1 = log_u1(SPIN, e1)
    rows = figure1_rows(e1, SPIN, n_points=50, v_min=0.05, v_max=14.0)
    dt = time.perf_counter() - t
    grid = [r for r in rows if r.v <= 14.0 + 1e-12]
    ordered = all(r.E_envelope <= r.E_exact for r in rows)
    start_ok = abs(grid[0].E_exact - 1.0) <= 0.2
    E14 = grid[-1].E_exact
    beyond = log_energy(u1 * (1 + 1e-3), SPIN, e1).E
    crossing = E14 > 0 and abs(rows[-1].E_exact) < 1e-8 and beyond < 0
    criterion(5, "Figure 1 ordering and endpoints", len(grid) == 50 and ordered and start_ok and crossing and dt < 120,
              f"ordered={ordered} |E(0.05)-1|={abs(grid[0].E_exact - 1):.4f} (limit 0.2) "
              f"E(14)={E14:.4f} E(u1)={rows[-1].E_exact:.1e} E(1.001 u1)={beyond:.1e} t={dt:.1f}s")


def test_criterion_06_log_scaling(criterion):
    worst = 0.0
    for L, nu in ((1, 0), (0, 1)):
        e1 = log_e1(L, nu)
        for v in (0.5, 2.0, 4.0):
            F = schrodinger_eigenvalue(np.log, v, L, nu).eigenvalue
            worst = max(worst, abs(F - (e1 * v - 0.5 * v * math.log(v))) / abs(F))
    criterion(6, "log scaling law", worst <= 1e-5, f"max rel err={worst:.1e}")


def test_criterion_07_comparison_suite(criterion):
    cases = builtin_corpus()
    outcomes = run_corpus(cases, tol=1e-6)
    ordered = [o for o in outcomes if o.status != "NOT-COMPARABLE"]
    nus_ok = all(ch.nu <= 2 for c in cases for ch in c.channels)
    passed = all(o.status == "PASS" for o in ordered)
    margin = min(E2 - E1 for o in ordered for E1, E2 in o.report.energies)
    scans = [
        (Coulomb(2.0), Coulomb(1.0), 11),
        (ShiftedCoulomb(1.0, -0.3), ShiftedCoulomb(1.0, 0.2), 11),
        (Oscillator(0.5), Oscillator(1.0), 11),
        (ShiftedCoulomb(1.0, 1.0), Log(1.0), 6),
        (Log(1.0), Custom(lambda r: np.log(r) + 0.1, 1.0), 5),
    ]
    monotone = all(family_scan(V1, V2, SPIN, n_a=n).monotone(1e-8) for V1, V2, n in scans)
    criterion(7, "comparison-theorem suite", len(ordered) >= 12 and nus_ok and passed and monotone,
              f"{len(ordered)} ordered pairs min margin={margin:.2e} scans monotone={monotone}")


def test_criterion_08_derivative_identity(criterion):
    worst = 0.0
    for v, c, ch in ((1.0, 0.2, SPIN), (0.5, 0.0, SPIN), (2.0, 0.5, Channel(nu=1)),
                     (-1.0, -0.2, Channel(tau=-1, mode="pseudo"))):
        P = principal_quantum(ch, "coulomb-like")
        exact = -4 * (ch.mu + c) * v / (P * P * (1 + v * v / (P * P)) ** 2)
        lhs, rhs = energy_derivative_identity(coulomb_strength_family(c), v, ch)
        worst = max(worst, abs(lhs - exact) / abs(exact), abs(rhs - exact) / abs(exact))
    criterion(8, "shifted-Coulomb derivative identity", worst <= 1e-4, f"max rel err={worst:.1e}")


def test_criterion_09_kratzer(criterion):
    worst = 0.0
    for a in (0.05, 0.2, 0.5):
        for v in (0.5, 1.0, 2.0):
            for c in (-0.3, 0.0, 0.4):
                worst = max(worst, abs(kratzer_energy(a, v, c, SPIN).E - kratzer_quartic_energy(a, v, c, SPIN)))
    limit = max(abs(kratzer_energy(a, 1.0, c, SPIN).E - shifted_coulomb_energy(1.0, c, SPIN).E)
                for a in (1e-10, 0.0) for c in (-0.3, 0.0, 0.4))
    try:
        kratzer_energy(0.3, 0.0, 0.0, SPIN)
        empty = False
    except NoDiscreteSpectrum:
        empty = True
    criterion(9, "Kratzer two routes, a->0 limit, empty spectrum", worst <= 1e-8 and limit <= 1e-8 and empty,
              f"max route diff={worst:.1e} a->0 diff={limit:.1e}")


def test_criterion_10_reconstruction(criterion):
    worst_res, worst_norm, nodes_ok = 0.0, 0.0, True
    for nu in (0, 1):
        ch = Channel(nu=nu)
        state = dirac_state(Coulomb(1.0), ch)
        worst_res = max(worst_res, *state.residuals)
        worst_norm = max(worst_norm, state.norm_defect)
        main = state.psi1
        nodes_ok &= node_count(main[np.abs(main) > 1e-10 * np.abs(main).max()]) == nu
    criterion(10, "component reconstruction", worst_res <= 1e-6 and worst_norm <= 1e-8 and nodes_ok,
              f"max defect={worst_res:.1e} norm defect={worst_norm:.1e} nodes ok={nodes_ok}")
