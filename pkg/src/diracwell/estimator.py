"""Scikit-learn estimator facade over the well solver and field evaluator.

Fitting solves the bound-state eigenproblem for the configured well;
transforming maps (rho, phi) sample points to spinor and field features of
one selected state, so the solver composes with sklearn pipelines and
model-selection tooling.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from . import field as field_mod
from .field import NORMALIZATIONS, RAW
from .solver import find_eigenstates
from .units import CODATA2018, WellConfig, to_internal

FEATURE_NAMES = (
    "re_psi1",
    "im_psi1",
    "re_psi4",
    "im_psi4",
    "j_rho",
    "j_phi",
    "j_z",
    "charge_density",
)


class CylindricalDiracWell(TransformerMixin, BaseEstimator):
    """Bound states and fields of a finite cylindrical quantum well.

    Parameters
    ----------
    radius_nm : float, default=10.0
        Well radius in nm.
    potential_ev : float, default=0.01
        Well depth in eV; must stay below the electron rest energy.
    azimuthal_l : int, default=0
        Azimuthal quantum number of the spin-up family.
    radial_n : int, default=1
        Which bound state (1 = ground state) transform evaluates.
    max_states : int or None, default=None
        Optional cap on the number of states solved during fit.
    normalization : {"raw", "unit-charge"}, default="raw"
        Raw dimensionless profiles, or SI fields for one electron per nm
        of axial length.

    Attributes
    ----------
    states_ : list of EigenState
        All bound states found, ordered by energy.
    n_states_ : int
        Number of bound states.
    state_ : EigenState
        The state selected by ``radial_n``.
    kinetic_energies_mev_ : ndarray
        Kinetic energies of all bound states in meV.

    Examples
    --------
    >>> well = CylindricalDiracWell(radius_nm=10.0, potential_ev=0.01).fit()
    >>> well.n_states_
    2
    >>> X = [[5.0, 0.0], [12.0, 1.0]]
    >>> well.transform(X).shape
    (2, 8)
    """

    def __init__(
        self,
        radius_nm: float = 10.0,
        potential_ev: float = 0.01,
        azimuthal_l: int = 0,
        radial_n: int = 1,
        max_states: int | None = None,
        normalization: str = RAW,
    ):
        self.radius_nm = radius_nm
        self.potential_ev = potential_ev
        self.azimuthal_l = azimuthal_l
        self.radial_n = radial_n
        self.max_states = max_states
        self.normalization = normalization

    def _config(self) -> WellConfig:
        return to_internal(
            WellConfig(
                radius_nm=self.radius_nm,
                potential_ev=self.potential_ev,
                azimuthal_l=self.azimuthal_l,
            )
        )

    def fit(self, X=None, y=None):
        """Solve the eigenproblem; X and y are accepted for API compatibility."""
        if self.normalization not in NORMALIZATIONS:
            raise ValueError(
                f"normalization must be one of {NORMALIZATIONS}, got {self.normalization!r}"
            )
        if not isinstance(self.radial_n, int) or self.radial_n < 1:
            raise ValueError(f"radial_n must be a positive integer, got {self.radial_n!r}")
        config = self._config()
        states = find_eigenstates(config, self.max_states)
        if len(states) < self.radial_n:
            raise ValueError(
                f"well binds only {len(states)} state(s) for l = {self.azimuthal_l}; "
                f"radial_n = {self.radial_n} is out of range"
            )
        self.states_ = states
        self.n_states_ = len(states)
        self.state_ = states[self.radial_n - 1]
        self.kinetic_energies_mev_ = np.array([s.energy_kinetic_mev for s in states])
        return self

    def transform(self, X) -> np.ndarray:
        """Evaluate the selected state's fields at sample points.

        Parameters
        ----------
        X : array-like of shape (n_samples, 2)
            Columns are (rho_nm, phi_rad) with rho >= 0.

        Returns
        -------
        ndarray of shape (n_samples, 8)
            Columns as in :func:`get_feature_names_out`.
        """
        check_is_fitted(self, "states_")
        X = check_array(X, dtype=float, ensure_2d=True)
        if X.shape[1] != 2:
            raise ValueError(f"expected 2 columns (rho_nm, phi_rad), got {X.shape[1]}")
        rho, phi = X[:, 0], X[:, 1]
        if np.any(rho < 0.0):
            raise ValueError("rho must be >= 0")

        config = self._config()
        state = self.state_
        psi = field_mod.spinor_vector(state, config, rho, phi)
        j_rho, j_phi, j_z = field_mod.bilinear_current_profiles(state, config, rho, phi)
        f, g = field_mod.radial_profiles(state, config, rho)
        charge = -(f * f + g * g)

        if self.normalization == field_mod.UNIT_CHARGE:
            norm = field_mod.normalization_integral(state, config)
            c = CODATA2018
            psi = psi / np.sqrt(norm)
            to_si_j = c.elementary_charge_c * c.speed_of_light_nm_per_s * 1e18 / norm
            j_rho, j_phi, j_z = j_rho * to_si_j, j_phi * to_si_j, j_z * to_si_j
            charge = charge * c.elementary_charge_c * 1e27 / norm

        return np.column_stack(
            [
                psi[:, 0].real,
                psi[:, 0].imag,
                psi[:, 3].real,
                psi[:, 3].imag,
                j_rho,
                j_phi,
                j_z,
                charge,
            ]
        )

    def get_feature_names_out(self, input_features=None) -> np.ndarray:
        return np.asarray(FEATURE_NAMES, dtype=object)
