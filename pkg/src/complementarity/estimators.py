"""scikit-learn style wrappers around the fringe fit and the interferometer model."""
from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from .channels import NoiseParams, noisy_output_state
from .interferometer import (
    UnitaryParams,
    analytic_visibility_phase,
    build_internal_unitary,
    detection_probability,
)
from .measures import negativity


def _chi_column(X):
    X = check_array(X, ensure_2d=False)
    if X.ndim == 2:
        if X.shape[1] != 1:
            raise ValueError(f"expected a single phase column, got {X.shape[1]} features")
        X = X[:, 0]
    return X


class FringeFitter(RegressorMixin, BaseEstimator):
    """Least-squares fit of ``P(chi) = (1 + visibility cos(chi - phase)) / 2``.

    The offset is fixed at 1/2. On an equally spaced grid over one period the
    fit coincides with :func:`~complementarity.interferometer.extract_fringe`.
    """

    def __init__(self, degenerate_tol=1e-10):
        self.degenerate_tol = degenerate_tol

    def fit(self, X, y):
        X, y = check_X_y(X, y, ensure_2d=False, y_numeric=True)
        chi = _chi_column(X)
        if chi.size < 2:
            raise ValueError("need at least 2 samples to fit a fringe")
        design = np.column_stack([np.cos(chi), np.sin(chi)])
        (b, c), *_ = np.linalg.lstsq(design, 2.0 * y - 1.0, rcond=None)
        self.visibility_ = float(math.hypot(b, c))
        self.degenerate_ = self.visibility_ <= self.degenerate_tol
        self.phase_ = 0.0 if self.degenerate_ else float(math.atan2(c, b))
        if self.phase_ <= -math.pi:
            self.phase_ = math.pi
        self.n_features_in_ = 1
        return self

    def predict(self, X):
        check_is_fitted(self, "visibility_")
        chi = _chi_column(X)
        return 0.5 * (1.0 + self.visibility_ * np.cos(chi - self.phase_))


class InterferometerSimulator(BaseEstimator):
    """Noisy interferometer with fixed internal state ``b0 e_z`` and unitary ``(t, x, y, z)``.

    ``y=None`` solves the unit constraint for a non-negative ``y``. ``fit``
    validates the parameters and caches the fringe and the (phase-independent)
    negativity; ``predict`` maps phases to detection probabilities.
    """

    def __init__(self, b0=0.7, t=0.0, x=0.4, y=None, z=0.0, p=0.0, q=0.0):
        self.b0 = b0
        self.t = t
        self.x = x
        self.y = y
        self.z = z
        self.p = p
        self.q = q

    def fit(self, X=None, y=None):
        if self.y is None:
            self.unitary_params_ = UnitaryParams.complete("y", t=self.t, x=self.x, z=self.z)
        else:
            self.unitary_params_ = UnitaryParams(self.t, self.x, self.y, self.z)
        if not 0.0 <= self.b0 <= 1.0:
            raise ValueError(f"b0 must lie in [0, 1], got {self.b0}")
        self.noise_ = NoiseParams(self.p, self.q)
        self.unitary_ = build_internal_unitary(self.unitary_params_)
        fringe = analytic_visibility_phase(self.t, self.z, self.b0, self.noise_.alpha_q)
        self.visibility_ = fringe.visibility
        self.phase_ = fringe.phase
        self.negativity_ = negativity(self.output_state(0.0))
        return self

    def output_state(self, chi):
        check_is_fitted(self, "unitary_")
        return noisy_output_state(self.b0, chi, self.unitary_, self.noise_)

    def predict(self, X):
        chi = _chi_column(X)
        return np.array([detection_probability(self.output_state(c)) for c in chi])
