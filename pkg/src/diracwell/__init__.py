"""Bound states, evanescent wavefunctions and circulating current densities
of a relativistic electron in a finite cylindrical quantum well."""

__version__ = "0.1.0"

from .bessel import ScaledK, bessel_i, bessel_j, bessel_k_scaled, ln_bessel_k_scaled
from .estimator import CylindricalDiracWell
from .field import (
    RAW,
    UNIT_CHARGE,
    FieldSample,
    QuadratureError,
    SpinorSample,
    alpha_matrices,
    charge_density,
    current_density,
    evaluate_spinor,
    normalization_integral,
    outside_charge_fraction,
    skin_depth_nm,
)
from .limits import (
    LimitReport,
    SweepResult,
    bessel_j0_zero,
    convergence_report,
    infinite_well_zeta,
    sweep,
)
from .solver import (
    EigenState,
    NoConvergenceError,
    WaveNumbers,
    boundary_residual,
    find_eigenstates,
    ln_kappa,
    wave_numbers,
    wave_numbers_from_kinetic,
)
from .units import CODATA2018, PhysicalConstants, WellConfig, to_internal

__all__ = [
    "__version__",
    "CODATA2018",
    "PhysicalConstants",
    "WellConfig",
    "to_internal",
    "ScaledK",
    "bessel_j",
    "bessel_i",
    "bessel_k_scaled",
    "ln_bessel_k_scaled",
    "WaveNumbers",
    "EigenState",
    "NoConvergenceError",
    "wave_numbers",
    "wave_numbers_from_kinetic",
    "boundary_residual",
    "find_eigenstates",
    "ln_kappa",
    "SpinorSample",
    "FieldSample",
    "QuadratureError",
    "RAW",
    "UNIT_CHARGE",
    "alpha_matrices",
    "evaluate_spinor",
    "current_density",
    "charge_density",
    "normalization_integral",
    "outside_charge_fraction",
    "skin_depth_nm",
    "LimitReport",
    "SweepResult",
    "bessel_j0_zero",
    "infinite_well_zeta",
    "convergence_report",
    "sweep",
    "CylindricalDiracWell",
]
