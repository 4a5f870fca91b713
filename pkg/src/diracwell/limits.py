"""Convergence of the finite well toward the infinite-well idealization.

The infinite-well interior wave number for l = 0 is fixed by J_0 vanishing
at the wall; the zeros are located at runtime by bisecting the production
J_0 between brackets seeded from the ~pi asymptotic zero spacing, so no
tabulated zero constants are embedded.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .bessel import bessel_j
from .field import outside_charge_fraction, skin_depth_nm
from .solver import EigenState, find_eigenstates
from .units import CODATA2018, PhysicalConstants, WellConfig


def bessel_j0_zero(n: int) -> float:
    """The n-th positive zero of J_0 (n >= 1), by bracketed bisection."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"zero index must be a positive integer, got {n!r}")
    # McMahon: zeros approach (n - 1/4) pi with spacing pi
    guess = (n - 0.25) * math.pi
    lo, hi = guess - 0.5, guess + 0.5
    f_lo, f_hi = bessel_j(0, lo), bessel_j(0, hi)
    while f_lo * f_hi > 0.0:
        lo -= 0.1
        hi += 0.1
        f_lo, f_hi = bessel_j(0, lo), bessel_j(0, hi)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        f_mid = bessel_j(0, mid)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def infinite_well_zeta(config: WellConfig, n: int = 1) -> float:
    """Infinite-well interior wave number (n-th J_0 zero)/R, in 1/nm; l = 0 only."""
    if config.azimuthal_l != 0:
        raise ValueError("the infinite-well comparison is defined for l = 0")
    return bessel_j0_zero(n) / config.radius_nm


@dataclass(frozen=True)
class LimitReport:
    """Ground-state convergence data across a grid of well depths."""

    radius_nm: float
    potential_grid_ev: tuple[float, ...]
    kinetic_energies_mev: tuple[float, ...]
    zeta_ground_per_nm: tuple[float, ...]
    zeta_infinite_per_nm: float
    skin_depths_nm: tuple[float, ...]
    outside_fractions: tuple[float, ...]

    @property
    def zeta_ratios(self) -> tuple[float, ...]:
        return tuple(z / self.zeta_infinite_per_nm for z in self.zeta_ground_per_nm)


@dataclass
class SweepResult:
    """Convergence report plus the full eigenstate table for every depth."""

    report: LimitReport
    states_by_potential: dict[float, list[EigenState]]


def sweep(
    radius_nm: float,
    potentials_ev,
    *,
    constants: PhysicalConstants = CODATA2018,
    max_states: int | None = None,
) -> SweepResult:
    """Solve every depth (concurrently; they are independent) and report.

    The potential grid is sorted ascending; every depth must bind at least
    one l = 0 state.
    """
    potentials = sorted(float(u) for u in potentials_ev)
    if not potentials:
        raise ValueError("at least one potential is required")

    def solve(u: float) -> list[EigenState]:
        return find_eigenstates(
            WellConfig(radius_nm=radius_nm, potential_ev=u, azimuthal_l=0),
            max_states,
            constants=constants,
        )

    with ThreadPoolExecutor(max_workers=min(len(potentials), 8)) as pool:
        solved = list(pool.map(solve, potentials))

    states_by_potential: dict[float, list[EigenState]] = {}
    energies, zetas, skins, fractions = [], [], [], []
    for u, states in zip(potentials, solved):
        if not states:
            raise ValueError(f"no bound state found for U = {u} eV")
        states_by_potential[u] = states
        ground = states[0]
        config = WellConfig(radius_nm=radius_nm, potential_ev=u, azimuthal_l=0)
        energies.append(ground.energy_kinetic_mev)
        zetas.append(ground.wave_numbers.zeta_per_nm)
        skins.append(skin_depth_nm(ground))
        fractions.append(outside_charge_fraction(ground, config, constants=constants))

    report = LimitReport(
        radius_nm=radius_nm,
        potential_grid_ev=tuple(potentials),
        kinetic_energies_mev=tuple(energies),
        zeta_ground_per_nm=tuple(zetas),
        zeta_infinite_per_nm=infinite_well_zeta(
            WellConfig(radius_nm=radius_nm, potential_ev=potentials[0], azimuthal_l=0)
        ),
        skin_depths_nm=tuple(skins),
        outside_fractions=tuple(fractions),
    )
    return SweepResult(report=report, states_by_potential=states_by_potential)


def convergence_report(
    radius_nm: float,
    potentials_ev,
    *,
    constants: PhysicalConstants = CODATA2018,
) -> LimitReport:
    """Per-depth ground-state zeta, skin depth and outside charge fraction."""
    return sweep(radius_nm, potentials_ev, constants=constants).report
