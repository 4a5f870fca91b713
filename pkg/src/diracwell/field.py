"""Spinor, charge-density and current-density fields of a bound state.

The spin-up state populates only the first and fourth spinor components,

    psi1 = f(rho) e^{i l phi},        psi4 = i g(rho) e^{i (l+1) phi},

with real radial profiles f, g. Inside the well f = J_l(zeta rho) and
g = -(hbar c zeta / (E + mc^2)) J_{l+1}(zeta rho); the recurrence
identities collapse the raw derivative brackets to these single-term
forms, and the equivalence is itself unit-tested. Outside, both profiles
carry the amplitude ratio kappa and an evanescent K_l tail and are
evaluated entirely in log space as exp(ln|kappa| - xi rho + ln K~_l),
flushing to zero below 1e-300.

Current densities come from the bilinears j_k = -e c psi^dag alpha_k psi
with the explicit cylindrical alpha matrices; that bilinear is the source
of truth, and the analytic product form (j_phi proportional to
J_l J_{l+1} inside, kappa^2 K_l K_{l+1} outside, one shared constant) is
recomputed on every call as a consistency guard. j_rho and j_z vanish
identically for these states.

Raw mode reports the dimensionless profiles themselves (interior Bessel
coefficient 1, charge in units of e/nm^3 and current in units of
e*c/nm^3 with e > 0 and electron charge -e). Unit-charge mode rescales to
one electron per nm of axial length and converts to SI (C/m^3, A/m^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate

from .bessel import bessel_j, ln_bessel_k_scaled
from .solver import EigenState
from .units import CODATA2018, PhysicalConstants, WellConfig

RAW = "raw"
UNIT_CHARGE = "unit-charge"
NORMALIZATIONS = (RAW, UNIT_CHARGE)

# exp() below this is flushed to exact zero (double denormals start ~1e-308)
UNDERFLOW_LOG_FLOOR = math.log(1e-300)

# quadrature contract for the normalization integral
QUAD_RELATIVE_ERROR = 1e-8
_TAIL_EFOLDS = 45.0


class QuadratureError(RuntimeError):
    """The normalization quadrature did not reach its error budget."""


@dataclass(frozen=True)
class SpinorSample:
    """Four spinor components at one point; psi2 = psi3 = 0 for these states."""

    rho_nm: float
    phi_rad: float
    psi1: complex
    psi2: complex
    psi3: complex
    psi4: complex


@dataclass(frozen=True)
class FieldSample:
    """Charge density and current-density vector at one point."""

    rho_nm: float
    phi_rad: float
    j_rho: float
    j_phi: float
    j_z: float
    charge_density: float


def alpha_matrices(phi: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The cylindrical alpha matrices (alpha_rho, alpha_phi, alpha_z) at phi."""
    ep = np.exp(1j * phi)
    em = np.exp(-1j * phi)
    a_rho = np.array(
        [
            [0, 0, 0, em],
            [0, 0, ep, 0],
            [0, em, 0, 0],
            [ep, 0, 0, 0],
        ],
        dtype=complex,
    )
    a_phi = np.array(
        [
            [0, 0, 0, -1j * em],
            [0, 0, 1j * ep, 0],
            [0, -1j * em, 0, 0],
            [1j * ep, 0, 0, 0],
        ],
        dtype=complex,
    )
    a_z = np.array(
        [
            [0, 0, 1, 0],
            [0, 0, 0, -1],
            [1, 0, 0, 0],
            [0, -1, 0, 0],
        ],
        dtype=complex,
    )
    return a_rho, a_phi, a_z


def _exp_flushed(log_amplitude):
    out = np.where(log_amplitude > UNDERFLOW_LOG_FLOOR, np.exp(log_amplitude), 0.0)
    return out


def radial_profiles(
    state: EigenState,
    config: WellConfig,
    rho_nm,
    *,
    constants: PhysicalConstants = CODATA2018,
    branch: str = "auto",
):
    """Real radial profiles (f, g) of psi1 and psi4 at rho (scalar or array).

    branch selects the interior/exterior expression explicitly ("inside",
    "outside") or by position ("auto", boundary point included inside);
    forcing a branch is how the continuity checks evaluate both limits at
    rho = R.
    """
    rho_in = np.asarray(rho_nm, dtype=float)
    scalar = rho_in.ndim == 0
    rho = np.atleast_1d(rho_in).ravel()
    if np.any(rho < 0.0):
        raise ValueError("rho must be >= 0")
    if branch not in ("auto", "inside", "outside"):
        raise ValueError(f"unknown branch {branch!r}")

    l = state.azimuthal_l
    eps = state.energy_kinetic_ev
    u = config.potential_ev
    two_mc2 = 2.0 * constants.electron_rest_energy_ev
    zeta = state.wave_numbers.zeta_per_nm
    xi = state.wave_numbers.xi_per_nm
    hbar_c = constants.hbar_c_ev_nm
    # hbar c zeta / (E + mc^2) and hbar c xi / (E - U + mc^2)
    c_in = hbar_c * zeta / (two_mc2 + eps)
    c_out = hbar_c * xi / (two_mc2 + eps - u)

    f = np.zeros_like(rho)
    g = np.zeros_like(rho)

    if branch == "auto":
        inside = rho <= config.radius_nm
    elif branch == "inside":
        inside = np.ones_like(rho, dtype=bool)
    else:
        inside = np.zeros_like(rho, dtype=bool)

    if np.any(inside):
        r_in = rho[inside]
        f[inside] = bessel_j(l, zeta * r_in)
        g[inside] = -c_in * bessel_j(l + 1, zeta * r_in)

    outside = ~inside
    if np.any(outside):
        r_out = rho[outside]
        if np.any(r_out <= 0.0):
            raise ValueError("the exterior branch requires rho > 0")
        x = xi * r_out
        log_f = state.ln_kappa - x + ln_bessel_k_scaled(l, x)
        log_g = state.ln_kappa - x + ln_bessel_k_scaled(l + 1, x)
        f[outside] = state.kappa_sign * _exp_flushed(log_f)
        g[outside] = -c_out * state.kappa_sign * _exp_flushed(log_g)

    if scalar:
        return float(f[0]), float(g[0])
    return f.reshape(rho_in.shape), g.reshape(rho_in.shape)


def spinor_vector(
    state: EigenState,
    config: WellConfig,
    rho_nm,
    phi_rad,
    *,
    constants: PhysicalConstants = CODATA2018,
    branch: str = "auto",
) -> np.ndarray:
    """Stacked four-spinor(s) with shape (..., 4)."""
    rho, phi = np.broadcast_arrays(np.asarray(rho_nm, float), np.asarray(phi_rad, float))
    f, g = radial_profiles(state, config, rho, constants=constants, branch=branch)
    l = state.azimuthal_l
    psi = np.zeros(rho.shape + (4,), dtype=complex)
    psi[..., 0] = f * np.exp(1j * l * phi)
    psi[..., 3] = 1j * g * np.exp(1j * (l + 1) * phi)
    return psi


def evaluate_spinor(
    state: EigenState,
    config: WellConfig,
    rho_nm: float,
    phi_rad: float,
    *,
    normalization: str = RAW,
    constants: PhysicalConstants = CODATA2018,
    branch: str = "auto",
) -> SpinorSample:
    """The four-component spinor at one point (psi2 = psi3 = 0 exactly)."""
    _check_normalization(normalization)
    psi = spinor_vector(state, config, float(rho_nm), float(phi_rad),
                        constants=constants, branch=branch)
    if normalization == UNIT_CHARGE:
        psi = psi / math.sqrt(normalization_integral(state, config, constants=constants))
    return SpinorSample(
        rho_nm=float(rho_nm),
        phi_rad=float(phi_rad),
        psi1=complex(psi[0]),
        psi2=complex(psi[1]),
        psi3=complex(psi[2]),
        psi4=complex(psi[3]),
    )


def _check_normalization(normalization: str) -> None:
    if normalization not in NORMALIZATIONS:
        raise ValueError(f"normalization must be one of {NORMALIZATIONS}, got {normalization!r}")


def bilinear_current_profiles(
    state: EigenState,
    config: WellConfig,
    rho_nm,
    phi_rad,
    *,
    constants: PhysicalConstants = CODATA2018,
    branch: str = "auto",
):
    """Raw current profiles (-psi^dag alpha_k psi) from the explicit matrices.

    Returns (j_rho, j_phi, j_z) in units of e*c/nm^3; the overall minus sign
    is the electron charge -e. Scalar in, scalar out; arrays are evaluated
    in chunks via an einsum over stacked alpha matrices.
    """
    rho_b, phi_b = np.broadcast_arrays(np.asarray(rho_nm, float), np.asarray(phi_rad, float))
    shape = rho_b.shape
    scalar = shape == ()
    rho = np.atleast_1d(rho_b).ravel()
    phi = np.atleast_1d(phi_b).ravel()
    psi = spinor_vector(state, config, rho, phi, constants=constants, branch=branch)

    out = np.zeros((3, rho.size))
    chunk = 4096
    for start in range(0, rho.size, chunk):
        p = psi[start:start + chunk]
        ep = np.exp(1j * phi[start:start + chunk])
        em = np.conj(ep)
        n = p.shape[0]
        stacks = np.zeros((3, n, 4, 4), dtype=complex)
        stacks[0, :, 0, 3] = em
        stacks[0, :, 1, 2] = ep
        stacks[0, :, 2, 1] = em
        stacks[0, :, 3, 0] = ep
        stacks[1, :, 0, 3] = -1j * em
        stacks[1, :, 1, 2] = 1j * ep
        stacks[1, :, 2, 1] = -1j * em
        stacks[1, :, 3, 0] = 1j * ep
        stacks[2, :, 0, 2] = 1.0
        stacks[2, :, 1, 3] = -1.0
        stacks[2, :, 2, 0] = 1.0
        stacks[2, :, 3, 1] = -1.0
        bil = np.einsum("ni,knij,nj->kn", np.conj(p), stacks, p).real
        out[:, start:start + n] = -bil

    if scalar:
        return float(out[0, 0]), float(out[1, 0]), float(out[2, 0])
    return out[0].reshape(shape), out[1].reshape(shape), out[2].reshape(shape)


def closed_form_j_phi_profile(
    state: EigenState,
    config: WellConfig,
    rho_nm,
    *,
    constants: PhysicalConstants = CODATA2018,
    branch: str = "auto",
):
    """Analytic azimuthal current profile, same units and sign as the bilinear.

    Inside: 2 hbar c zeta J_l J_{l+1} / (E + mc^2); outside the same with
    kappa^2 xi K_l K_{l+1} / (E - U + mc^2), evaluated in log space. The
    proportionality constant (2 hbar c, times e c in physical units) is
    shared by both regions, which is what makes j_phi continuous at R.
    """
    f, g = radial_profiles(state, config, rho_nm, constants=constants, branch=branch)
    return -2.0 * f * g


def current_density(
    state: EigenState,
    config: WellConfig,
    rho_nm: float,
    phi_rad: float,
    *,
    normalization: str = RAW,
    constants: PhysicalConstants = CODATA2018,
    branch: str = "auto",
) -> FieldSample:
    """Charge and current densities at one point.

    The alpha-matrix bilinear is authoritative; the analytic product form
    is recomputed and any disagreement beyond rounding raises, so a broken
    kernel cannot silently produce plausible fields.
    """
    _check_normalization(normalization)
    j_rho, j_phi, j_z = bilinear_current_profiles(
        state, config, float(rho_nm), float(phi_rad), constants=constants, branch=branch
    )
    analytic = closed_form_j_phi_profile(state, config, float(rho_nm),
                                         constants=constants, branch=branch)
    scale = max(abs(j_phi), abs(analytic))
    if scale > 0.0 and abs(j_phi - analytic) > 1e-8 * scale:
        raise RuntimeError(
            f"bilinear/analytic j_phi mismatch at rho = {rho_nm} nm: "
            f"{j_phi!r} vs {analytic!r}"
        )
    f, g = radial_profiles(state, config, float(rho_nm), constants=constants, branch=branch)
    charge = -(f * f + g * g)

    if normalization == UNIT_CHARGE:
        norm = normalization_integral(state, config, constants=constants)
        to_si_j = constants.elementary_charge_c * constants.speed_of_light_nm_per_s * 1e18 / norm
        to_si_charge = constants.elementary_charge_c * 1e27 / norm
        j_rho, j_phi, j_z = j_rho * to_si_j, j_phi * to_si_j, j_z * to_si_j
        charge = charge * to_si_charge

    return FieldSample(
        rho_nm=float(rho_nm),
        phi_rad=float(phi_rad),
        j_rho=j_rho,
        j_phi=j_phi,
        j_z=j_z,
        charge_density=charge,
    )


def charge_density(
    state: EigenState,
    config: WellConfig,
    rho_nm,
    *,
    normalization: str = RAW,
    constants: PhysicalConstants = CODATA2018,
    branch: str = "auto",
):
    """Charge density -e (|psi1|^2 + |psi4|^2); independent of phi."""
    _check_normalization(normalization)
    f, g = radial_profiles(state, config, rho_nm, constants=constants, branch=branch)
    density = -(f * f + g * g)
    if normalization == UNIT_CHARGE:
        norm = normalization_integral(state, config, constants=constants)
        density = density * constants.elementary_charge_c * 1e27 / norm
    return density


@lru_cache(maxsize=256)
def _normalization_integral_cached(
    state: EigenState,
    config: WellConfig,
    constants: PhysicalConstants,
    rho_cut_nm: float | None,
) -> float:
    xi = state.wave_numbers.xi_per_nm
    radius = config.radius_nm
    if rho_cut_nm is None:
        rho_cut_nm = radius + _TAIL_EFOLDS / xi
    if rho_cut_nm <= radius:
        raise ValueError("rho_cut must lie outside the well")

    def density(rho: float) -> float:
        f, g = radial_profiles(state, config, rho, constants=constants)
        return (f * f + g * g) * rho

    inner, inner_err = integrate.quad(density, 0.0, radius, epsabs=0.0, epsrel=1e-11, limit=200)
    outer, outer_err = integrate.quad(density, radius, rho_cut_nm, epsabs=0.0, epsrel=1e-11,
                                      limit=200)

    # analytic tail from K_l(x) ~ sqrt(pi/2x) e^{-x}: both profiles share the
    # same leading decay, so the remainder integrates in closed form
    eps = state.energy_kinetic_ev
    u = config.potential_ev
    two_mc2 = 2.0 * constants.electron_rest_energy_ev
    c_out = constants.hbar_c_ev_nm * xi / (two_mc2 + eps - u)
    log_tail = 2.0 * (state.ln_kappa - xi * rho_cut_nm)
    tail = 0.0
    if log_tail > UNDERFLOW_LOG_FLOOR:
        tail = (1.0 + c_out * c_out) * math.pi / (4.0 * xi * xi) * math.exp(log_tail)

    total = 2.0 * math.pi * (inner + outer + tail)
    quad_err = 2.0 * math.pi * (inner_err + outer_err)
    if not (total > 0.0) or not math.isfinite(total):
        raise QuadratureError(f"normalization integral came out as {total!r}")
    if quad_err > QUAD_RELATIVE_ERROR * total:
        raise QuadratureError(
            f"normalization quadrature error {quad_err:.3e} exceeds "
            f"{QUAD_RELATIVE_ERROR:.0e} relative"
        )
    return total


def normalization_integral(
    state: EigenState,
    config: WellConfig,
    *,
    constants: PhysicalConstants = CODATA2018,
    rho_cut_nm: float | None = None,
) -> float:
    """2 pi Int |psi|^2 rho d rho per unit axial length, in nm^2.

    Adaptive quadrature to the cutoff plus a closed-form evanescent tail;
    used to rescale fields to one electron per unit axial length.
    """
    return _normalization_integral_cached(state, config, constants, rho_cut_nm)


def outside_charge_fraction(
    state: EigenState,
    config: WellConfig,
    *,
    constants: PhysicalConstants = CODATA2018,
) -> float:
    """Fraction of the state's charge residing beyond the well radius."""
    xi = state.wave_numbers.xi_per_nm
    rho_cut = config.radius_nm + _TAIL_EFOLDS / xi

    def density(rho: float) -> float:
        f, g = radial_profiles(state, config, rho, constants=constants)
        return (f * f + g * g) * rho

    outer, _ = integrate.quad(density, config.radius_nm, rho_cut, epsabs=0.0,
                              epsrel=1e-11, limit=200)
    total = normalization_integral(state, config, constants=constants)
    return 2.0 * math.pi * outer / total


def skin_depth_nm(state: EigenState) -> float:
    """Evanescent e-folding length 1/xi outside the well."""
    return 1.0 / state.wave_numbers.xi_per_nm
