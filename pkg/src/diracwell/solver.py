"""Bound-state eigensolver for the finite cylindrical well.

Matching the interior J_l branch of the four-spinor against the exterior
K_l branch at rho = R leaves one transcendental condition per azimuthal
number l. With the scaled kernels (the common e^{-xi R} factor cancelled
analytically) it reads

    D(E) = xi J_l(zeta R) K~_{l+1}(xi R)
           - (E - U + mc^2)/(E + mc^2) zeta K~_l(xi R) J_{l+1}(zeta R),

where K~ = e^x K. Roots in kinetic energy on the open window (0, U) are
bracketed by a sign-change scan and polished by bisection; bisection is
unconditionally convergent inside a bracket and avoids special-function
derivatives.

The solver variable is the kinetic energy eps = E - mc^2. On a 511 keV
total-energy scale the meV-sized window would lose ~8 digits to
cancellation in E^2 - m^2c^4, so the wave numbers use the factored forms

    zeta^2 = eps (2 mc^2 + eps) / (hbar c)^2,
    xi^2   = (U - eps) (2 mc^2 + eps - U) / (hbar c)^2,

which are exact.

The amplitude ratio kappa between exterior and interior solutions is kept
strictly in natural-log form with a separate sign: Table-scale deep wells
push kappa past 1e69 and intermediate factors past double-precision
overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bessel import bessel_j, bessel_k_scaled, ln_bessel_k_scaled
from .units import CODATA2018, PER_NM_TO_PER_M, PhysicalConstants, WellConfig, to_internal

# Scan/refinement contract: >= 2000 intervals, open window with a relative
# guard so xi = 0 and zeta = 0 are never evaluated, refinement well past
# 1e-12 relative in energy (bisection runs to bracket exhaustion, which the
# residual tolerance below needs).
DEFAULT_SCAN_POINTS = 2001
WINDOW_GUARD_FRACTION = 1e-9
RESIDUAL_TOLERANCE = 1e-10
_MAX_BISECTIONS = 200


class NoConvergenceError(RuntimeError):
    """Bisection failed to converge; carries the offending bracket."""

    def __init__(self, message: str, bracket: tuple[float, float] | None = None):
        if bracket is not None:
            message = f"{message} (bracket E_kin = [{bracket[0]!r}, {bracket[1]!r}] eV)"
        super().__init__(message)
        self.bracket = bracket


@dataclass(frozen=True)
class WaveNumbers:
    """Interior wave number zeta and exterior decay constant xi, in 1/nm."""

    zeta_per_nm: float
    xi_per_nm: float

    @property
    def zeta_per_m(self) -> float:
        return self.zeta_per_nm * PER_NM_TO_PER_M

    @property
    def xi_per_m(self) -> float:
        return self.xi_per_nm * PER_NM_TO_PER_M


@dataclass(frozen=True)
class EigenState:
    """One converged bound state.

    ln_kappa is ln|kappa| for the exterior/interior amplitude ratio, with
    kappa_sign carrying its sign separately (excited states can have
    J_l(zeta R) < 0); kappa itself may exceed double-precision range.
    boundary_residual is |D| / (|term1| + |term2|) at the converged energy.
    """

    azimuthal_l: int
    radial_n: int
    energy_total_ev: float
    energy_kinetic_mev: float
    wave_numbers: WaveNumbers
    ln_kappa: float
    kappa_sign: int
    boundary_residual: float

    @property
    def energy_kinetic_ev(self) -> float:
        return self.energy_kinetic_mev / 1e3

    @property
    def log10_kappa(self) -> float:
        return self.ln_kappa / math.log(10.0)


def wave_numbers_from_kinetic(
    energy_kinetic_ev,
    config: WellConfig,
    constants: PhysicalConstants = CODATA2018,
):
    """Wave numbers from the kinetic energy, cancellation-free.

    Accepts scalars or arrays; the kinetic energy must lie inside the open
    bound window (0, U).
    """
    eps = np.asarray(energy_kinetic_ev, dtype=float)
    u = config.potential_ev
    if np.any(eps <= 0.0) or np.any(eps >= u):
        raise ValueError(
            f"kinetic energy must lie inside the open bound window (0, {u}) eV"
        )
    two_mc2 = 2.0 * constants.electron_rest_energy_ev
    zeta = np.sqrt(eps * (two_mc2 + eps)) / constants.hbar_c_ev_nm
    xi = np.sqrt((u - eps) * (two_mc2 + eps - u)) / constants.hbar_c_ev_nm
    if np.ndim(energy_kinetic_ev) == 0:
        return WaveNumbers(zeta_per_nm=float(zeta), xi_per_nm=float(xi))
    return zeta, xi


def wave_numbers(
    energy_total_ev: float,
    config: WellConfig,
    constants: PhysicalConstants = CODATA2018,
) -> WaveNumbers:
    """Wave numbers from the total energy mc^2 < E < mc^2 + U."""
    mc2 = constants.electron_rest_energy_ev
    if not (mc2 < energy_total_ev < mc2 + config.potential_ev):
        raise ValueError(
            f"total energy {energy_total_ev} eV outside the bound window "
            f"({mc2}, {mc2 + config.potential_ev}) eV"
        )
    return wave_numbers_from_kinetic(energy_total_ev - mc2, config, constants)


def _residual_terms(energy_kinetic_ev, config, constants):
    """The two matched terms of D; their sum of magnitudes scales the defect."""
    eps = np.asarray(energy_kinetic_ev, dtype=float)
    u = config.potential_ev
    r = config.radius_nm
    l = config.azimuthal_l
    two_mc2 = 2.0 * constants.electron_rest_energy_ev
    zeta = np.sqrt(eps * (two_mc2 + eps)) / constants.hbar_c_ev_nm
    xi = np.sqrt((u - eps) * (two_mc2 + eps - u)) / constants.hbar_c_ev_nm
    ratio = (two_mc2 + eps - u) / (two_mc2 + eps)
    term1 = xi * bessel_j(l, zeta * r) * bessel_k_scaled(l + 1, xi * r)
    term2 = ratio * zeta * bessel_k_scaled(l, xi * r) * bessel_j(l + 1, zeta * r)
    return term1, term2


def boundary_residual(
    energy_total_ev,
    config: WellConfig,
    constants: PhysicalConstants = CODATA2018,
):
    """Boundary-matching defect D(E), scaled by e^{xi R}.

    Zero exactly at the eigenenergies. Accepts scalar or array total
    energies inside the open bound window.
    """
    mc2 = constants.electron_rest_energy_ev
    eps = np.asarray(energy_total_ev, dtype=float) - mc2
    if np.any(eps <= 0.0) or np.any(eps >= config.potential_ev):
        raise ValueError("total energy outside the open bound window")
    term1, term2 = _residual_terms(eps, config, constants)
    d = term1 - term2
    if np.ndim(energy_total_ev) == 0:
        return float(d)
    return d


def _residual_kinetic(eps: float, config, constants) -> float:
    term1, term2 = _residual_terms(eps, config, constants)
    return float(term1 - term2)


def _bisect(lo: float, hi: float, f_lo: float, config, constants) -> float:
    """Drive the sign-change bracket to floating-point exhaustion.

    Stopping at the contractual 1e-12 relative energy tolerance would leave
    a matching defect orders above the 1e-10 residual budget, so iteration
    continues until the bracket cannot be split further (< 60 halvings).
    """
    for _ in range(_MAX_BISECTIONS):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            return mid
        f_mid = _residual_kinetic(mid, config, constants)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    raise NoConvergenceError("bisection did not converge", bracket=(lo, hi))


def _make_state(eps: float, radial_n: int, config, constants) -> EigenState:
    l = config.azimuthal_l
    wn = wave_numbers_from_kinetic(eps, config, constants)
    zr = wn.zeta_per_nm * config.radius_nm
    xr = wn.xi_per_nm * config.radius_nm
    jl = bessel_j(l, zr)
    # kappa K_l(xi R) = J_l(zeta R); entirely in log space, sign kept apart
    ln_kappa = math.log(abs(jl)) - ln_bessel_k_scaled(l, xr) + xr
    kappa_sign = 1 if jl >= 0.0 else -1
    term1, term2 = _residual_terms(eps, config, constants)
    residual = abs(float(term1) - float(term2)) / (abs(float(term1)) + abs(float(term2)))
    return EigenState(
        azimuthal_l=l,
        radial_n=radial_n,
        energy_total_ev=constants.electron_rest_energy_ev + eps,
        energy_kinetic_mev=eps * 1e3,
        wave_numbers=wn,
        ln_kappa=ln_kappa,
        kappa_sign=kappa_sign,
        boundary_residual=residual,
    )


def find_eigenstates(
    config: WellConfig,
    max_states: int | None = None,
    *,
    constants: PhysicalConstants = CODATA2018,
    scan_points: int = DEFAULT_SCAN_POINTS,
) -> list[EigenState]:
    """All bound states of the well for its azimuthal number, lowest first.

    Scans D over the open kinetic window, refines every sign change by
    bisection and orders the roots by energy; radial_n starts at 1 for the
    ground state. An empty list is a valid result for a well too shallow to
    bind a state.
    """
    config = to_internal(config, constants)
    if max_states is not None and max_states < 0:
        raise ValueError("max_states must be >= 0")
    u = config.potential_ev
    guard = WINDOW_GUARD_FRACTION * u
    grid = np.linspace(guard, u - guard, scan_points)
    values = _residual_terms(grid, config, constants)
    d = values[0] - values[1]

    roots: list[float] = []
    for i in range(len(grid) - 1):
        if d[i] == 0.0:
            roots.append(float(grid[i]))
            continue
        if d[i] * d[i + 1] < 0.0:
            roots.append(_bisect(float(grid[i]), float(grid[i + 1]), float(d[i]), config, constants))
    if d[-1] == 0.0:
        roots.append(float(grid[-1]))

    states = [_make_state(eps, n + 1, config, constants) for n, eps in enumerate(sorted(roots))]
    if max_states is not None:
        states = states[:max_states]
    return states


def ln_kappa(state: EigenState, config: WellConfig,
             constants: PhysicalConstants = CODATA2018) -> float:
    """Recompute ln|kappa| from the state's converged wave numbers."""
    zr = state.wave_numbers.zeta_per_nm * config.radius_nm
    xr = state.wave_numbers.xi_per_nm * config.radius_nm
    jl = bessel_j(state.azimuthal_l, zr)
    return math.log(abs(jl)) - ln_bessel_k_scaled(state.azimuthal_l, xr) + xr
