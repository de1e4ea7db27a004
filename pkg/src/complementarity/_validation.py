"""Shared tolerances, exceptions and input checks."""
from __future__ import annotations

import numpy as np

#: entrywise tolerance for Hermiticity, trace and unitarity checks
STRUCTURAL_TOL = 1e-10
#: tolerance on eigenvalues (PSD checks, zero/negative classification)
SPECTRAL_TOL = 1e-9
#: tolerance on unit-norm parameter constraints
CONSTRAINT_TOL = 1e-9


class ComplementarityError(ValueError):
    """Base class for invalid input to the library."""


class DimensionError(ComplementarityError):
    """Operand shapes are incompatible."""


class DomainError(ComplementarityError):
    """A parameter lies outside the domain of a formula."""


class ConvergenceError(ArithmeticError):
    """An iterative routine hit its iteration cap."""

    def __init__(self, message, residual):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


def as_square(m, name="matrix"):
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ComplementarityError(f"{name} has non-finite entries")
    return a


def check_hermitian(m, tol=STRUCTURAL_TOL, name="matrix"):
    a = as_square(m, name)
    dev = np.max(np.abs(a - a.conj().T)) if a.size else 0.0
    if dev > tol:
        raise ComplementarityError(f"{name} is not Hermitian (max deviation {dev:.3e})")
    return a


def check_unitary(m, tol=STRUCTURAL_TOL, name="U"):
    a = as_square(m, name)
    dev = np.max(np.abs(a.conj().T @ a - np.eye(a.shape[0])))
    if dev > tol:
        raise ComplementarityError(f"{name} is not unitary (max |U'U - I| = {dev:.3e})")
    return a


def check_probability(value, name="p"):
    v = float(value)
    if not 0.0 <= v <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {v}")
    return v


def check_in_range(value, lo, hi, name):
    v = float(value)
    if not lo <= v <= hi:
        raise DomainError(f"{name} must lie in [{lo}, {hi}], got {v}")
    return v
