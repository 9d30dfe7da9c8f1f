"""Pick the best available route to a Dirac energy for a potential model."""

from __future__ import annotations

from typing import Optional

from .channels import Channel
from .dirac_solver import dirac_energy
from .exact_spectra import (
    EigenvalueSolution,
    coulomb_energy,
    kratzer_energy,
    linear_energy,
    log_energy,
    oscillator_energy,
    shifted_coulomb_energy,
)
from .potentials import Coulomb, Kratzer, Linear, Log, Oscillator, PotentialModel, ShiftedCoulomb
from .radial_solver import RadialGrid, linear_P, log_e1

METHODS = ("auto", "exact", "oracle")


def has_closed_form(V: PotentialModel) -> bool:
    return isinstance(V, (Oscillator, Linear, Coulomb, ShiftedCoulomb, Kratzer, Log))


def exact_energy(V: PotentialModel, ch: Channel, e1: Optional[float] = None,
                 P_linear: Optional[float] = None) -> EigenvalueSolution:
    """Closed-form or implicit-formula energy; numeric constants come from the radial solver."""
    if isinstance(V, Oscillator):
        return oscillator_energy(V.v, ch)
    if isinstance(V, Linear):
        return linear_energy(V.v, ch, P_linear if P_linear is not None else linear_P(ch.L, ch.nu))
    if isinstance(V, Coulomb):
        return coulomb_energy(V.v, ch)
    if isinstance(V, ShiftedCoulomb):
        return shifted_coulomb_energy(V.v, V.c, ch)
    if isinstance(V, Kratzer):
        if V.a == 0:
            return shifted_coulomb_energy(V.v, V.c, ch)
        return kratzer_energy(V.a, V.v, V.c, ch)
    if isinstance(V, Log):
        return log_energy(V.v, ch, e1 if e1 is not None else log_e1(ch.L, ch.nu))
    raise TypeError(f"no closed form for {type(V).__name__}")


def energy(V: PotentialModel, ch: Channel, method: str = "auto", grid: Optional[RadialGrid] = None,
           tol: float = 1e-10, e1: Optional[float] = None,
           P_linear: Optional[float] = None) -> EigenvalueSolution:
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}")
    if method == "exact" or (method == "auto" and has_closed_form(V)):
        return exact_energy(V, ch, e1=e1, P_linear=P_linear)
    return dirac_energy(V, ch, grid=grid, tol=tol, e1=e1)
