"""Bound-state spectra of the Dirac equation under spin and pseudo-spin symmetry."""

from .channels import Channel, SymmetryMode, derive_channel, principal_quantum
from .errors import (
    DegenerateEnergy,
    DiracSpectraError,
    DomainError,
    NoBoundState,
    NoDiscreteSpectrum,
    NotApplicable,
    NotComparable,
    NumericalFailure,
)
from .potentials import Coulomb, Custom, Kratzer, Linear, Log, Oscillator, ShiftedCoulomb, interpolate
from .spectrum import energy

__all__ = [
    "Channel",
    "SymmetryMode",
    "derive_channel",
    "principal_quantum",
    "DiracSpectraError",
    "NoDiscreteSpectrum",
    "NoBoundState",
    "NumericalFailure",
    "DomainError",
    "DegenerateEnergy",
    "NotApplicable",
    "NotComparable",
    "Coulomb",
    "Custom",
    "Kratzer",
    "Linear",
    "Log",
    "Oscillator",
    "ShiftedCoulomb",
    "interpolate",
    "energy",
]
