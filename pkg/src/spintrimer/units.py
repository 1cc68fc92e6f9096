"""Conversion between dimensionless model units and laboratory units.

Exchange constants of molecular magnets are conventionally quoted as
wavenumbers; they convert to kelvin through the second radiation
constant hc/k_B.  Fields enter through the Zeeman energy g mu_B B.
Constants are CODATA-2018 values rounded to 8 significant digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .hamiltonian import ModelParams

#: hc/k_B: kelvin per cm^-1
CM_INV_TO_KELVIN = 1.4387769

#: mu_B/k_B: kelvin per tesla
BOHR_MAGNETON_K_PER_T = 0.6717139


@dataclass(frozen=True)
class PhysicalParams:
    """Laboratory-units parameter set for a real compound.

    J_wavenumber, J1_wavenumber : exchange constants in cm^-1 (J > 0)
    D_over_J                    : dimensionless anisotropy ratio
    g_factor                    : composite Lande factor; deliberately has
                                  no default, it must come from the user
    field                       : B^z in tesla
    temperature                 : T in kelvin
    """

    J_wavenumber: float
    g_factor: float
    J1_wavenumber: float = 0.0
    D_over_J: float = 0.0
    field: float = 0.0
    temperature: float = 1.0

    def __post_init__(self):
        for name in ("J_wavenumber", "J1_wavenumber", "D_over_J", "g_factor",
                     "field", "temperature"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} is not finite")
        if self.J_wavenumber <= 0:
            raise ValueError(f"J must be positive, got {self.J_wavenumber} cm^-1")
        if self.g_factor <= 0:
            raise ValueError(f"g-factor must be positive, got {self.g_factor}")


def exchange_in_kelvin(phys: PhysicalParams) -> float:
    """J expressed in kelvin."""
    return phys.J_wavenumber * CM_INV_TO_KELVIN


def field_to_h_over_j(phys: PhysicalParams, field_tesla: float | None = None,
                      unit: str = "kelvin") -> float:
    """Zeeman ratio h/J = g mu_B B / J.

    The conversion can be routed through kelvin or through wavenumbers;
    the dimensionless result is identical, which the tests assert.
    """
    B = phys.field if field_tesla is None else field_tesla
    if unit == "kelvin":
        return phys.g_factor * BOHR_MAGNETON_K_PER_T * B / exchange_in_kelvin(phys)
    if unit == "wavenumber":
        mu_b_cm = BOHR_MAGNETON_K_PER_T / CM_INV_TO_KELVIN  # cm^-1 per tesla
        return phys.g_factor * mu_b_cm * B / phys.J_wavenumber
    raise ValueError(f"unknown unit {unit!r}; expected 'kelvin' or 'wavenumber'")


def temperature_to_kt_over_j(phys: PhysicalParams, temperature_kelvin: float | None = None) -> float:
    T = phys.temperature if temperature_kelvin is None else temperature_kelvin
    return T / exchange_in_kelvin(phys)


def to_model_units(phys: PhysicalParams) -> tuple[ModelParams, float]:
    """(ModelParams with J = 1, k_B T / J) for the physical parameter set."""
    par = ModelParams(
        J=1.0,
        J1=phys.J1_wavenumber / phys.J_wavenumber,
        D=phys.D_over_J,
        h=field_to_h_over_j(phys),
    )
    return par, temperature_to_kt_over_j(phys)


def from_model_units(par: ModelParams, kt_over_j: float, J_wavenumber: float,
                     g_factor: float) -> PhysicalParams:
    """Inverse of to_model_units at a given J and g; exact round-trip."""
    J_K = J_wavenumber * CM_INV_TO_KELVIN
    return PhysicalParams(
        J_wavenumber=J_wavenumber,
        J1_wavenumber=par.J1 * J_wavenumber,
        D_over_J=par.D,
        g_factor=g_factor,
        field=par.h * J_K / (g_factor * BOHR_MAGNETON_K_PER_T),
        temperature=kt_over_j * J_K,
    )
