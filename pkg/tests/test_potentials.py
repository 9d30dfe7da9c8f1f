import numpy as np
import pytest
from hypothesis import given, strategies as st

from dirac_spectra.potentials import (
    Coulomb,
    Custom,
    Kratzer,
    Log,
    Oscillator,
    ShiftedCoulomb,
    describe,
    interpolate,
    shifted,
)

R = np.logspace(-3, 2, 200)


@pytest.mark.parametrize("V1, V2, kind", [
    (Coulomb(2.0), Coulomb(1.0), Coulomb),
    (Coulomb(1.0), ShiftedCoulomb(1.0, 0.5), ShiftedCoulomb),
    (Coulomb(1.0), Kratzer(0.1, 1.0, 0.0), Kratzer),
    (Oscillator(0.5), Oscillator(1.0), Oscillator),
    (Log(1.0), Coulomb(1.0), Custom),
])
@pytest.mark.parametrize("a", [0.0, 0.3, 1.0])
def test_interpolate(V1, V2, kind, a):
    V = interpolate(V1, V2, a)
    assert isinstance(V, kind)
    np.testing.assert_allclose(V(R), (1 - a) * V1(R) + a * V2(R), rtol=1e-12, atol=1e-12)


def test_interpolate_keeps_negative_orientation():
    V = interpolate(Log(-1.0), Custom(lambda r: np.log(r) + 0.1, -1.0), 0.5)
    assert V.v < 0
    np.testing.assert_allclose(V(R), -np.log(R) - 0.05, rtol=1e-12)


@given(st.floats(-3, 3), st.floats(-3, 3), st.floats(-2, 2))
def test_shifted(v, c, d):
    V = shifted(ShiftedCoulomb(v, c), d)
    assert isinstance(V, ShiftedCoulomb)
    np.testing.assert_allclose(V(R), ShiftedCoulomb(v, c)(R) + d, rtol=1e-12, atol=1e-12)


def test_kratzer_split():
    K = Kratzer(0.2, 1.0, 0.3)
    assert K.inverse_square() == 0.2
    np.testing.assert_allclose(K(R), 0.2 / R**2 + K.regular(R), rtol=1e-14)


def test_describe():
    assert describe(ShiftedCoulomb(1.0, 0.5)) == "shifted-coulomb(v=1, c=0.5)"
