"""Quantum numbers of a Dirac channel and the map to the combined radial equation.

For spin symmetry (S = V, s = +1) and pseudo-spin symmetry (S = -V, s = -1)
both radial problems reduce to

    -psi'' + (kappa(kappa+1)/r^2 + 2(E + mu) V) psi = (E^2 - mu^2) psi

with kappa = s k_d and mu = s m.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple


class SymmetryMode(enum.IntEnum):
    SPIN = 1
    PSEUDO = -1

    @property
    def s(self) -> int:
        return int(self)

    @classmethod
    def parse(cls, value) -> "SymmetryMode":
        if isinstance(value, cls):
            return value
        if isinstance(value, str):
            key = value.strip().lower()
            if key in ("spin", "s=v", "+1", "1", "+"):
                return cls.SPIN
            if key in ("pseudo", "pseudo-spin", "pseudospin", "s=-v", "-1", "-"):
                return cls.PSEUDO
            raise ValueError(f"unknown symmetry mode {value!r}")
        return cls(int(value))


class DerivedParameters(NamedTuple):
    k_d: Fraction
    kappa: Fraction
    mu: float
    L: float


class Family(str, enum.Enum):
    OSCILLATOR = "oscillator"
    COULOMB_LIKE = "coulomb-like"


@dataclass(frozen=True)
class Channel:
    """A bound-state channel (d, j, tau, s, nu) with mass m.

    ``j2`` is twice the total angular momentum so that half-integers stay
    exact. For d = 1 the values of ``j2`` and ``tau`` are ignored.
    """

    d: int = 3
    j2: int = 1
    tau: int = 1
    mode: SymmetryMode = SymmetryMode.SPIN
    nu: int = 0
    m: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "mode", SymmetryMode.parse(self.mode))
        if self.d < 1:
            raise ValueError("dimension d must be >= 1")
        if self.nu < 0:
            raise ValueError("node count nu must be >= 0")
        if self.m < 0:
            raise ValueError("mass m must be >= 0")
        if self.d > 1:
            if self.tau not in (1, -1):
                raise ValueError("tau must be +1 or -1")
            if self.j2 <= 0 or self.j2 % 2 != 1:
                raise ValueError("j must be a positive half-integer (j2 odd and positive)")

    @property
    def s(self) -> int:
        return self.mode.s

    @property
    def k_d(self) -> Fraction:
        if self.d == 1:
            return Fraction(0)
        return self.tau * (Fraction(self.j2, 2) + Fraction(self.d - 2, 2))

    @property
    def kappa(self) -> Fraction:
        return self.s * self.k_d

    @property
    def mu(self) -> float:
        return self.s * self.m

    @property
    def L(self) -> float:
        return float(abs(self.kappa + Fraction(1, 2)) - Fraction(1, 2))

    def flipped(self) -> "Channel":
        """Same quantum numbers in the other symmetry mode."""
        return Channel(self.d, self.j2, self.tau, SymmetryMode(-self.s), self.nu, self.m)

    def with_nu(self, nu: int) -> "Channel":
        return Channel(self.d, self.j2, self.tau, self.mode, nu, self.m)

    def with_mass(self, m: float) -> "Channel":
        return Channel(self.d, self.j2, self.tau, self.mode, self.nu, m)


def derive_channel(ch: Channel) -> DerivedParameters:
    """(k_d, kappa, mu, L) for ``ch``; L(L+1) = kappa(kappa+1) holds exactly."""
    return DerivedParameters(ch.k_d, ch.kappa, ch.mu, ch.L)


def principal_quantum(ch: Channel, family) -> float:
    """P for the oscillator (4nu + 2L + 3) or Coulomb-like (nu + 1 + L) spectra."""
    try:
        family = Family(family)
    except ValueError:
        raise ValueError(f"unknown potential family {family!r}; linear and log constants come from radial_solver") from None
    if family is Family.OSCILLATOR:
        return 4 * ch.nu + 2 * ch.L + 3
    return ch.nu + 1 + ch.L
