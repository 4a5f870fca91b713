"""Independent extended-precision oracles, used only by the tests.

Everything here goes through mpmath's arbitrary-precision engine (series
and quadrature), with no code shared with the production kernels. The
slow-but-sure constructions (explicit power series, the cosh integral
representation of K) cross-check mpmath's own Bessel implementations at
spot points, and the mpmath values then serve as the reference for the
dense production-grid comparisons.
"""

from __future__ import annotations

from functools import lru_cache

import mpmath as mp

ORACLE_DPS = 40


def oracle_j(order: int, x: float) -> mp.mpf:
    with mp.workdps(ORACLE_DPS):
        return mp.besselj(order, mp.mpf(x))


def oracle_i(order: int, x: float) -> mp.mpf:
    with mp.workdps(ORACLE_DPS):
        return mp.besseli(order, mp.mpf(x))


def oracle_k_scaled(order: int, x: float) -> mp.mpf:
    with mp.workdps(ORACLE_DPS):
        xm = mp.mpf(x)
        return mp.exp(xm) * mp.besselk(order, xm)


def oracle_k_scaled_integral(order: int, x: float) -> mp.mpf:
    """e^x K_order(x) from the integral representation
    K_l(x) = Int_0^inf e^{-x cosh t} cosh(l t) dt, folded into scaled form.

    The integrand decays like exp(-x (cosh t - 1)); truncating where that
    factor drops below 1e-50 of its peak keeps the quadrature finite while
    contributing nothing at the working precision."""
    with mp.workdps(ORACLE_DPS):
        xm = mp.mpf(x)
        t_max = mp.acosh(1 + (mp.mpf(50 + 5 * order) * mp.log(10)) / xm)

        def integrand(t):
            return mp.exp(xm * (1 - mp.cosh(t))) * mp.cosh(order * t)

        return mp.quad(integrand, [0, t_max / 2, t_max])


def oracle_j_series(order: int, x: float, terms: int = 400) -> mp.mpf:
    """J_order(x) from the raw alternating power series with enough guard
    digits to survive the cancellation (usable for x up to ~60)."""
    dps = ORACLE_DPS + int(1.2 * abs(x)) + 10
    with mp.workdps(dps):
        xm = mp.mpf(x)
        half = xm / 2
        term = half ** order / mp.factorial(order)
        total = term
        for k in range(1, terms):
            term *= -(half * half) / (k * (k + order))
            total += term
            if abs(term) < mp.mpf(10) ** (-dps) * max(abs(total), mp.mpf(1)):
                break
        return +total


def oracle_i_series(order: int, x: float, terms: int = 400) -> mp.mpf:
    dps = ORACLE_DPS + 10
    with mp.workdps(dps):
        xm = mp.mpf(x)
        half = xm / 2
        term = half ** order / mp.factorial(order)
        total = term
        for k in range(1, terms):
            term *= (half * half) / (k * (k + order))
            total += term
            if abs(term) < mp.mpf(10) ** (-dps) * max(abs(total), mp.mpf(1)):
                break
        return +total


@lru_cache(maxsize=16)
def oracle_j0_zero(n: int) -> float:
    """n-th positive zero of J_0, bisected on the oracle itself."""
    with mp.workdps(ORACLE_DPS):
        guess = (n - mp.mpf(1) / 4) * mp.pi
        lo, hi = guess - mp.mpf("0.5"), guess + mp.mpf("0.5")
        f_lo = mp.besselj(0, lo)
        assert f_lo * mp.besselj(0, hi) < 0
        for _ in range(200):
            mid = (lo + hi) / 2
            f_mid = mp.besselj(0, mid)
            if f_mid == 0:
                return float(mid)
            if mp.sign(f_mid) == mp.sign(f_lo):
                lo, f_lo = mid, f_mid
            else:
                hi = mid
        return float((lo + hi) / 2)


def oracle_bound_state_kinetic_ev(
    potential_ev: float,
    radius_nm: float,
    guess_kinetic_ev: float,
    order: int = 0,
    hbar_c_ev_nm: float = 197.3269804,
    electron_rest_energy_ev: float = 510998.95,
) -> float:
    """Kinetic energy of the bound state near the guess, solved at 40 digits
    directly from the unscaled transcendental matching condition."""
    with mp.workdps(ORACLE_DPS):
        hbarc = mp.mpf(hbar_c_ev_nm)
        mc2 = mp.mpf(electron_rest_energy_ev)
        u = mp.mpf(potential_ev)
        radius = mp.mpf(radius_nm)

        def mismatch(eps):
            zeta = mp.sqrt(eps * (2 * mc2 + eps)) / hbarc
            xi = mp.sqrt((u - eps) * (2 * mc2 + eps - u)) / hbarc
            ratio = (2 * mc2 + eps - u) / (2 * mc2 + eps)
            return xi * mp.besselj(order, zeta * radius) * mp.besselk(order + 1, xi * radius) \
                - ratio * zeta * mp.besselk(order, xi * radius) * mp.besselj(order + 1, zeta * radius)

        root = mp.findroot(mismatch, mp.mpf(guess_kinetic_ev))
        return float(mp.re(root))


def rel_err(value: float, reference) -> float:
    reference = float(reference)
    if reference == 0.0:
        return abs(value)
    return abs(value - reference) / abs(reference)
