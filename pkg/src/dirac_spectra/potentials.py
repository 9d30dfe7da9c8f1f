"""Radial potential models V(r).

Every model is linear in its couplings, so a straight line between two models
of the same family is again a member of that family. ``interpolate`` uses this
to keep closed-form spectra available along comparison families.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Callable, ClassVar

import numpy as np


class PotentialModel:
    kind: ClassVar[str] = "abstract"

    def __call__(self, r):
        raise NotImplementedError

    def inverse_square(self) -> float:
        """Coefficient of a 1/r^2 term, folded into the centrifugal barrier."""
        return 0.0

    def regular(self, r):
        """V(r) minus its 1/r^2 part."""
        return self(r)


@dataclass(frozen=True)
class Oscillator(PotentialModel):
    v: float
    kind: ClassVar[str] = "oscillator"

    def __call__(self, r):
        return self.v * np.square(r)


@dataclass(frozen=True)
class Linear(PotentialModel):
    v: float
    kind: ClassVar[str] = "linear"

    def __call__(self, r):
        return self.v * np.asarray(r, dtype=float)


@dataclass(frozen=True)
class Coulomb(PotentialModel):
    """V(r) = -v/r."""

    v: float
    kind: ClassVar[str] = "coulomb"

    def __call__(self, r):
        return -self.v / np.asarray(r, dtype=float)


@dataclass(frozen=True)
class ShiftedCoulomb(PotentialModel):
    """V(r) = -v/r + c."""

    v: float
    c: float
    kind: ClassVar[str] = "shifted-coulomb"

    def __call__(self, r):
        return -self.v / np.asarray(r, dtype=float) + self.c


@dataclass(frozen=True)
class Kratzer(PotentialModel):
    """V(r) = a/r^2 - v/r + c."""

    a: float
    v: float
    c: float
    kind: ClassVar[str] = "kratzer"

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        return self.a / (r * r) - self.v / r + self.c

    def inverse_square(self) -> float:
        return self.a

    def regular(self, r):
        return -self.v / np.asarray(r, dtype=float) + self.c


@dataclass(frozen=True)
class Log(PotentialModel):
    """V(r) = v ln r."""

    v: float
    kind: ClassVar[str] = "log"

    def __call__(self, r):
        return self.v * np.log(r)


@dataclass(frozen=True)
class Custom(PotentialModel):
    """V(r) = v * shape(r) for a vectorized shape continuous on (0, inf)."""

    shape: Callable
    v: float = 1.0
    label: str = "custom"
    kind: ClassVar[str] = "custom"

    def __call__(self, r):
        return self.v * np.asarray(self.shape(np.asarray(r, dtype=float)), dtype=float)


def _promote(V: PotentialModel) -> PotentialModel:
    if isinstance(V, Coulomb):
        return ShiftedCoulomb(V.v, 0.0)
    if isinstance(V, ShiftedCoulomb):
        return Kratzer(0.0, V.v, V.c)
    raise TypeError


_LADDER = (Coulomb, ShiftedCoulomb, Kratzer)


def _common_family(V1: PotentialModel, V2: PotentialModel):
    if type(V1) is type(V2) and not isinstance(V1, Custom):
        return V1, V2
    if isinstance(V1, _LADDER) and isinstance(V2, _LADDER):
        while _LADDER.index(type(V1)) < _LADDER.index(type(V2)):
            V1 = _promote(V1)
        while _LADDER.index(type(V2)) < _LADDER.index(type(V1)):
            V2 = _promote(V2)
        return V1, V2
    return None


def interpolate(V1: PotentialModel, V2: PotentialModel, a: float) -> PotentialModel:
    """V1 + a (V2 - V1), kept inside a built-in family whenever possible."""
    pair = _common_family(V1, V2)
    if pair is not None:
        P1, P2 = pair
        values = {
            f.name: (1 - a) * getattr(P1, f.name) + a * getattr(P2, f.name)
            for f in dataclasses.fields(P1)
        }
        return type(P1)(**values)

    # keep the orientation of the endpoints so the admissible half-line is unchanged
    sign = -1.0 if getattr(V1, "v", 1.0) < 0 and getattr(V2, "v", 1.0) < 0 else 1.0

    def shape(r):
        return sign * ((1 - a) * V1(r) + a * V2(r))

    return Custom(shape, sign, label=f"interp({a:g})")


def shifted(V: PotentialModel, c: float) -> PotentialModel:
    """V + c, staying in the Coulomb ladder when V is Coulombic."""
    if isinstance(V, (Coulomb, ShiftedCoulomb)):
        base = V if isinstance(V, ShiftedCoulomb) else ShiftedCoulomb(V.v, 0.0)
        return ShiftedCoulomb(base.v, base.c + c)
    if isinstance(V, Kratzer):
        return Kratzer(V.a, V.v, V.c + c)
    sign = -1.0 if getattr(V, "v", 1.0) < 0 else 1.0
    return Custom(lambda r: sign * (V(r) + c), sign, label=f"{V.kind}+{c:g}")


def describe(V: PotentialModel) -> str:
    if isinstance(V, Custom):
        return f"{V.label}(v={V.v:g})"
    params = ", ".join(f"{f.name}={getattr(V, f.name):g}" for f in dataclasses.fields(V))
    return f"{V.kind}({params})"
