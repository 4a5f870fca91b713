"""Physical constants, unit conversions and the well configuration.

Everything downstream computes in a single (eV, nm) unit system, in which
hbar*c = 197.3269804 eV nm multiplies out without extreme exponents. Wave
numbers are converted to 1/m only at output boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass

PER_NM_TO_PER_M = 1.0e9
EV_TO_MEV = 1.0e3


@dataclass(frozen=True)
class PhysicalConstants:
    """CODATA-2018 constants in the internal unit system."""

    hbar_c_ev_nm: float = 197.3269804
    electron_rest_energy_ev: float = 510998.95
    elementary_charge_c: float = 1.602176634e-19
    speed_of_light_m_per_s: float = 2.99792458e8

    @property
    def speed_of_light_nm_per_s(self) -> float:
        return self.speed_of_light_m_per_s * PER_NM_TO_PER_M


CODATA2018 = PhysicalConstants()


def per_nm_to_per_m(k_per_nm: float) -> float:
    return k_per_nm * PER_NM_TO_PER_M


def per_m_to_per_nm(k_per_m: float) -> float:
    return k_per_m / PER_NM_TO_PER_M


def ev_to_mev(energy_ev: float) -> float:
    return energy_ev * EV_TO_MEV


def mev_to_ev(energy_mev: float) -> float:
    return energy_mev / EV_TO_MEV


@dataclass(frozen=True)
class WellConfig:
    """A finite cylindrical quantum well.

    Attributes
    ----------
    radius_nm : well radius R > 0.
    potential_ev : well depth U, 0 < U < electron rest energy.
    azimuthal_l : azimuthal quantum number l >= 0 (spin-up construction).
    pz : longitudinal momentum; the model is strictly pz = 0.
    """

    radius_nm: float
    potential_ev: float
    azimuthal_l: int = 0
    pz: float = 0.0


def to_internal(config: WellConfig, constants: PhysicalConstants = CODATA2018) -> WellConfig:
    """Validate a configuration and return it in internal units (eV, nm).

    The public unit system is already the internal one, so this acts as the
    single validation gate every solver entry point goes through.

    Raises
    ------
    ValueError
        If the geometry is degenerate, the depth does not support bound
        states (U >= m c^2), or the quantum numbers are out of range.
    """
    if not (config.radius_nm > 0.0):
        raise ValueError(f"well radius must be positive, got {config.radius_nm} nm")
    if not (config.potential_ev > 0.0):
        raise ValueError(f"well depth must be positive, got {config.potential_ev} eV")
    if config.potential_ev >= constants.electron_rest_energy_ev:
        raise ValueError(
            "well depth must stay below the electron rest energy for bound states: "
            f"U = {config.potential_ev} eV >= {constants.electron_rest_energy_ev} eV"
        )
    if not isinstance(config.azimuthal_l, int) or isinstance(config.azimuthal_l, bool):
        raise ValueError(f"azimuthal quantum number must be an integer, got {config.azimuthal_l!r}")
    if config.azimuthal_l < 0:
        raise ValueError(f"azimuthal quantum number must be >= 0, got {config.azimuthal_l}")
    if config.pz != 0.0:
        raise ValueError("only pz = 0 states are modelled")
    return config
