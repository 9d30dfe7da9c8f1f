from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dirac_spectra.channels import Channel, SymmetryMode, derive_channel, principal_quantum


@pytest.mark.parametrize(
    "d, tau, mode, j2, expected",
    [
        (3, 1, "spin", 1, (1, 1, 1.0, 1.0)),
        (1, 1, "spin", 1, (0, 0, 1.0, 0.0)),
        (3, 1, "pseudo", 1, (1, -1, -1.0, 0.0)),
        (3, -1, "spin", 1, (-1, -1, 1.0, 0.0)),
        (3, 1, "spin", 3, (2, 2, 1.0, 2.0)),
        (2, 1, "spin", 1, (Fraction(1, 2), Fraction(1, 2), 1.0, 0.5)),
    ],
)
def test_derived_parameters(d, tau, mode, j2, expected):
    k, kappa, mu, L = derive_channel(Channel(d=d, j2=j2, tau=tau, mode=mode, m=1.0))
    assert (k, kappa, mu, L) == expected


@pytest.mark.parametrize(
    "nu, L_tau, family, P",
    [(0, 1, "coulomb-like", 2), (0, 1, "oscillator", 5), (1, -1, "coulomb-like", 2)],
)
def test_principal_quantum(nu, L_tau, family, P):
    ch = Channel(tau=L_tau, nu=nu)
    assert principal_quantum(ch, family) == P


def test_unknown_family_tag():
    with pytest.raises(ValueError):
        principal_quantum(Channel(), "linear")


@pytest.mark.parametrize("kwargs", [dict(j2=2), dict(j2=-1), dict(tau=0), dict(nu=-1), dict(m=-1.0), dict(d=0)])
def test_invalid_channels(kwargs):
    with pytest.raises(ValueError):
        Channel(**kwargs)


def test_mode_parsing():
    assert Channel(mode="pseudo").s == -1
    assert Channel(mode=SymmetryMode.SPIN).s == 1
    with pytest.raises(ValueError):
        SymmetryMode.parse("vector")


channels = st.builds(
    Channel,
    d=st.integers(1, 7),
    j2=st.integers(0, 10).map(lambda n: 2 * n + 1),
    tau=st.sampled_from([1, -1]),
    mode=st.sampled_from(["spin", "pseudo"]),
    nu=st.integers(0, 5),
    m=st.floats(0, 10),
)


@given(channels)
def test_L_identity(ch):
    kappa = ch.kappa
    L = abs(kappa + Fraction(1, 2)) - Fraction(1, 2)
    # kappa = -1/2 only occurs for d = 2, j = 1/2 and gives the planar s-wave L = -1/2
    assert L >= 0 or (ch.d == 2 and kappa == Fraction(-1, 2) and L == Fraction(-1, 2))
    assert L * (L + 1) == kappa * (kappa + 1)
    assert ch.L == float(L)


@given(channels)
def test_flip_negates(ch):
    f = ch.flipped()
    assert f.kappa == -ch.kappa
    assert f.mu == -ch.mu
    assert f.L == float(abs(-ch.kappa + Fraction(1, 2)) - Fraction(1, 2))


@given(st.integers(0, 10), st.sampled_from([1, -1]), st.sampled_from(["spin", "pseudo"]))
def test_one_dimension_ignores_j_tau(j, tau, mode):
    ch = Channel(d=1, j2=2 * j + 1, tau=tau, mode=mode)
    assert ch.kappa == 0 and ch.L == 0
