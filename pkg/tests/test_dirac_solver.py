import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dirac_spectra.channels import Channel, principal_quantum
from dirac_spectra.dirac_solver import (
    PotentialFamily,
    dirac_energy,
    dirac_state,
    energy_derivative_identity,
    reconstruct_components,
)
from dirac_spectra.errors import DegenerateEnergy, NoDiscreteSpectrum
from dirac_spectra.exact_spectra import (
    coulomb_components,
    coulomb_energy,
    kratzer_energy,
    log_energy,
    oscillator_energy,
    shifted_coulomb_energy,
)
from dirac_spectra.potentials import Coulomb, Kratzer, Log, Oscillator, ShiftedCoulomb
from dirac_spectra.radial_solver import log_e1

SPIN = Channel()


def test_coulomb_ground_state():
    assert dirac_energy(Coulomb(1.0), SPIN).E == pytest.approx(0.6, abs=1e-6)


def test_coulomb_wrong_sign():
    with pytest.raises(NoDiscreteSpectrum):
        dirac_energy(Coulomb(1.0), Channel(mode="pseudo"))


def test_log_matches_implicit_formula():
    E = dirac_energy(Log(1.0), SPIN).E
    assert E == pytest.approx(log_energy(1.0, SPIN, log_e1(1, 0)).E, abs=1e-5)
    assert E == pytest.approx(2.373, abs=1e-3)


@pytest.mark.parametrize("V, exact", [
    (ShiftedCoulomb(1.0, 0.4), lambda ch: shifted_coulomb_energy(1.0, 0.4, ch).E),
    (Oscillator(0.5), lambda ch: oscillator_energy(0.5, ch).E),
    (Kratzer(0.2, 1.0, 0.1), lambda ch: kratzer_energy(0.2, 1.0, 0.1, ch).E),
])
@pytest.mark.parametrize("nu", [0, 1])
def test_oracle_against_closed_forms(V, exact, nu):
    ch = Channel(nu=nu)
    assert dirac_energy(V, ch).E == pytest.approx(exact(ch), abs=1e-6)


@settings(max_examples=12, deadline=None)
@given(st.floats(0.2, 3.0), st.integers(0, 2), st.sampled_from([1, 3]), st.sampled_from([1, -1]))
def test_oracle_coulomb_property(v, nu, j2, tau):
    ch = Channel(j2=j2, tau=tau, nu=nu)
    sol = dirac_energy(Coulomb(v), ch)
    assert sol.E == pytest.approx(coulomb_energy(v, ch).E, abs=1e-6)
    assert sol.nodes == nu


def test_explicit_interval():
    sol = dirac_energy(Coulomb(1.0), SPIN, interval=(0.3, 0.9))
    assert sol.E == pytest.approx(0.6, abs=1e-6)
    with pytest.raises(NoDiscreteSpectrum):
        dirac_energy(Coulomb(1.0), SPIN, interval=(0.7, 0.9))


@pytest.mark.parametrize("nu", [0, 1])
@pytest.mark.parametrize("mode, v", [("spin", 1.0), ("pseudo", -1.0)])
def test_reconstruction(nu, mode, v):
    ch = Channel(tau=1 if mode == "spin" else -1, mode=mode, nu=nu)
    state = dirac_state(Coulomb(v), ch)
    assert state.norm_defect <= 1e-8
    assert max(state.residuals) <= 1e-6
    main = state.psi1 if ch.s == 1 else state.psi2
    signs = np.sign(main[np.abs(main) > 1e-8 * np.abs(main).max()])
    assert np.count_nonzero(signs[1:] != signs[:-1]) == nu


def test_reconstruction_matches_closed_form_components():
    ch = Channel(nu=1)
    state = dirac_state(Coulomb(1.0), ch)
    psi1, psi2 = coulomb_components(1.0, ch, state.E, state.r)
    s = np.sign(np.dot(psi1, state.psi1))
    assert np.max(np.abs(s * state.psi1 - psi1)) < 1e-5
    assert np.max(np.abs(s * state.psi2 - psi2)) < 1e-5


def test_degenerate_energy():
    r = np.linspace(0.01, 10, 2000)
    with pytest.raises(DegenerateEnergy):
        reconstruct_components(np.exp(-r), -1.0, SPIN, Coulomb(1.0), r)


def test_derivative_identity_coulomb_strength():
    c = 0.2
    fam = PotentialFamily(lambda a: ShiftedCoulomb(a, c), lambda r, a: -1.0 / r)
    lhs, rhs = energy_derivative_identity(fam, 1.0, SPIN)
    P = principal_quantum(SPIN, "coulomb-like")
    exact = -4 * (1 + c) * 1.0 / (P * P * (1 + 1 / P**2) ** 2)
    assert lhs == pytest.approx(exact, rel=1e-4)
    assert rhs == pytest.approx(exact, rel=1e-4)


def test_derivative_identity_constant_shift():
    fam = PotentialFamily(lambda a: ShiftedCoulomb(1.0, a), lambda r, a: np.ones_like(r))
    lhs, rhs = energy_derivative_identity(fam, 0.0, SPIN)
    assert lhs == pytest.approx(2 / (1 + 1 / 4), rel=1e-4)
    assert rhs == pytest.approx(lhs, rel=1e-4)


def test_derivative_identity_flat_family():
    fam = PotentialFamily(lambda a: Coulomb(1.0))
    lhs, rhs = energy_derivative_identity(fam, 0.5, SPIN)
    assert abs(lhs) < 1e-6 and abs(rhs) < 1e-12
