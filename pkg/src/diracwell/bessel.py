"""Bessel kernels for the cylindrical well solutions.

J_l describes the oscillatory interior, K_l the evanescent exterior. K is
only exposed exponentially scaled, e^x K_l(x): for a deep well xi*R reaches
~160 and the raw K_0(xi*R) would sit near 1e-71, so every consumer works
with the scaled value (or its log) and restores the e^{-x} factor
analytically. I_l exists to support the Wronskian identity checks.

Evaluation is delegated to scipy.special, which meets a 1e-12 relative
error budget against an independent extended-precision oracle over the
solver's whole argument range (verified in the test suite).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import special

# I_0(700) ~ 1.5e301; one more e-fold step of ~e^50 would overflow a double.
I_OVERFLOW_ARGUMENT = 700.0


def _check_order(order: int) -> int:
    if not isinstance(order, (int, np.integer)) or isinstance(order, bool):
        raise ValueError(f"order must be a non-negative integer, got {order!r}")
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    return int(order)


def _as_float_array(x):
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("argument must be finite")
    return arr


def _match_input(result: np.ndarray, x) -> float | np.ndarray:
    if np.isscalar(x) or np.ndim(x) == 0:
        return float(result)
    return result


def bessel_j(order: int, x):
    """Bessel function of the first kind J_order(x) for x >= 0."""
    order = _check_order(order)
    arr = _as_float_array(x)
    if np.any(arr < 0.0):
        raise ValueError("bessel_j is restricted to x >= 0")
    return _match_input(special.jv(order, arr), x)


def bessel_i(order: int, x):
    """Modified Bessel function I_order(x) for 0 <= x <= 700 (overflow guard)."""
    order = _check_order(order)
    arr = _as_float_array(x)
    if np.any(arr < 0.0):
        raise ValueError("bessel_i is restricted to x >= 0")
    if np.any(arr > I_OVERFLOW_ARGUMENT):
        raise ValueError(f"bessel_i overflows for x > {I_OVERFLOW_ARGUMENT}")
    return _match_input(special.iv(order, arr), x)


def bessel_k_scaled(order: int, x):
    """Exponentially scaled modified Bessel function e^x K_order(x), x > 0.

    K_order itself diverges at x = 0 and underflows for large x; only the
    scaled form is part of the public surface.
    """
    order = _check_order(order)
    arr = _as_float_array(x)
    if np.any(arr <= 0.0):
        raise ValueError("bessel_k_scaled requires x > 0 (K diverges at 0)")
    return _match_input(special.kve(order, arr), x)


def ln_bessel_k_scaled(order: int, x):
    """ln(e^x K_order(x)), the building block of all log-space tail work."""
    order = _check_order(order)
    arr = _as_float_array(x)
    if np.any(arr <= 0.0):
        raise ValueError("ln_bessel_k_scaled requires x > 0")
    return _match_input(np.log(special.kve(order, arr)), x)


@dataclass(frozen=True)
class ScaledK:
    """One evaluation of the scaled kernel, scaled_value = e^x K_order(x)."""

    order: int
    argument: float
    scaled_value: float

    @classmethod
    def evaluate(cls, order: int, argument: float) -> "ScaledK":
        return cls(order=_check_order(order), argument=float(argument),
                   scaled_value=bessel_k_scaled(order, argument))
