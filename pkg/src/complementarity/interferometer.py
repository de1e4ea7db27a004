"""Two-qubit Mach-Zehnder interferometer with an internal degree of freedom.

The circuit is ``V = V_H V_M V_C V_H`` acting on ``path (x) internal``:
beam splitters ``H (x) I``, mirrors ``X (x) I`` and the conditional gate
``|1><1| (x) U + e^{i chi} |0><0| (x) I``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._validation import (
    CONSTRAINT_TOL,
    STRUCTURAL_TOL,
    ComplementarityError,
    DomainError,
    check_unitary,
)
from .numerics import I2, PAULIS, SIGMA_X, DensityMatrix, kron

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
MIRROR = SIGMA_X
PROJ0 = np.array([[1, 0], [0, 0]], dtype=complex)
PROJ1 = np.array([[0, 0], [0, 1]], dtype=complex)

BEAM_SPLITTER = kron(HADAMARD, I2)
MIRRORS = kron(MIRROR, I2)
DETECTOR = kron(PROJ0, I2)

DEFAULT_FRINGE_SAMPLES = 16


@dataclass(frozen=True)
class UnitaryParams:
    """Real parameters of ``U = [[t + iz, ix + y], [ix - y, t - iz]]``."""

    t: float
    x: float
    y: float
    z: float

    def __post_init__(self):
        norm = self.t ** 2 + self.x ** 2 + self.y ** 2 + self.z ** 2
        if abs(norm - 1.0) > CONSTRAINT_TOL:
            raise DomainError(f"t^2 + x^2 + y^2 + z^2 = {norm:.12g}, expected 1")

    @classmethod
    def complete(cls, solve_for="y", **given):
        """Fill in ``solve_for`` as the non-negative root of the unit constraint.

        Raises :class:`DomainError` if the given components already exceed
        unit norm.
        """
        names = ("t", "x", "y", "z")
        if solve_for not in names:
            raise ComplementarityError(f"cannot solve for {solve_for!r}")
        vals = {k: float(given.get(k, 0.0)) for k in names if k != solve_for}
        rest = 1.0 - sum(v * v for v in vals.values())
        if rest < -CONSTRAINT_TOL:
            raise DomainError(f"components {vals} exceed unit norm")
        vals[solve_for] = math.sqrt(max(rest, 0.0))
        return cls(**vals)

    def as_tuple(self):
        return (self.t, self.x, self.y, self.z)


@dataclass(frozen=True)
class FringeFit:
    """Visibility and phase offset of ``P(chi) = (1 + visibility cos(chi - phase)) / 2``."""

    visibility: float
    phase: float
    degenerate: bool = False


def bloch_state(b):
    """Qubit density matrix ``(I + b.sigma) / 2``; ``b`` may be a scalar (taken along z)."""
    vec = np.array([0.0, 0.0, float(b)]) if np.ndim(b) == 0 else np.asarray(b, dtype=float)
    if vec.shape != (3,):
        raise ComplementarityError(f"Bloch vector must have 3 components, got {vec.shape}")
    if np.linalg.norm(vec) > 1.0 + 1e-12:
        raise DomainError(f"Bloch vector norm {np.linalg.norm(vec):.12g} exceeds 1")
    m = I2.copy()
    for bi, s in zip(vec, PAULIS):
        m = m + bi * s
    return DensityMatrix(0.5 * m, (2,))


def build_internal_unitary(params):
    if not isinstance(params, UnitaryParams):
        params = UnitaryParams(*params)
    t, x, y, z = params.as_tuple()
    return np.array([[t + 1j * z, 1j * x + y], [1j * x - y, t - 1j * z]], dtype=complex)


def conditional_gate(chi, U):
    """``|1><1| (x) U + e^{i chi} |0><0| (x) I``."""
    gate = np.zeros((4, 4), dtype=complex)
    gate[0, 0] = gate[1, 1] = np.exp(1j * chi)
    gate[2:, 2:] = U
    return gate


def build_circuit(chi, U):
    """The full 4x4 interferometer unitary for phase ``chi`` and internal unitary ``U``."""
    U = check_unitary(U, STRUCTURAL_TOL)
    return BEAM_SPLITTER @ MIRRORS @ conditional_gate(chi, U) @ BEAM_SPLITTER


def input_state(rho0_int):
    """Separable input with the particle in the horizontal path."""
    r = rho0_int.matrix if isinstance(rho0_int, DensityMatrix) else np.asarray(rho0_int, complex)
    return DensityMatrix(np.kron(PROJ0, r), (2, 2))


def internal_state(rho0_int):
    if isinstance(rho0_int, DensityMatrix):
        return rho0_int
    if np.ndim(rho0_int) <= 1:
        return bloch_state(rho0_int)
    return DensityMatrix(rho0_int, (2,))


def output_state(rho0_int, chi, U):
    """``V rho_in V^dagger`` for the internal state ``rho0_int``.

    ``rho0_int`` may be a 2x2 matrix, a :class:`DensityMatrix`, a Bloch
    vector, or a scalar ``b0`` meaning the Bloch vector ``b0 e_z``.
    """
    rho0 = internal_state(rho0_int)
    V = build_circuit(chi, U)
    rho_in = input_state(rho0).matrix
    return DensityMatrix(V @ rho_in @ V.conj().T, (2, 2))


def output_state_expanded(rho0_int, chi, U):
    """Term-by-term four-block expansion of the output state (independent of the gate product)."""
    r = internal_state(rho0_int).matrix
    U = np.asarray(U, dtype=complex)
    ones = np.array([[1, 1], [1, 1]])
    diff = np.array([[1, -1], [-1, 1]])
    left = np.array([[1, -1], [1, -1]])
    right = np.array([[1, 1], [-1, -1]])
    out = (
        np.kron(ones, U @ r @ U.conj().T)
        + np.kron(diff, r)
        + np.exp(-1j * chi) * np.kron(left, U @ r)
        + np.exp(1j * chi) * np.kron(right, r @ U.conj().T)
    )
    return DensityMatrix(out / 4, (2, 2))


def detection_probability(rho_out):
    """Probability of finding the particle in the horizontal output port."""
    m = rho_out.matrix if isinstance(rho_out, DensityMatrix) else np.asarray(rho_out, complex)
    if m.shape != (4, 4):
        raise ComplementarityError(f"expected a two-qubit state, got shape {m.shape}")
    return float(np.trace(DETECTOR @ m).real)


def _wrap_phase(phi):
    return math.pi if phi <= -math.pi else phi


def analytic_visibility_phase(t, z, b0, alpha_q=1.0, tol=STRUCTURAL_TOL):
    """Visibility and geometric phase from ``Tr(U rho0) = t + i b0 z``.

    ``alpha_q`` is the phase-noise contrast factor ``1 - 2q``; a negative
    value shifts the fringe by pi.
    """
    if abs(b0) > 1.0:
        raise DomainError(f"|b0| must not exceed 1, got {b0}")
    re, im = alpha_q * t, alpha_q * b0 * z
    gamma = math.hypot(re, im)
    if gamma <= tol:
        return FringeFit(gamma, 0.0, True)
    return FringeFit(gamma, _wrap_phase(math.atan2(im, re)), False)


def fringe_grid(K=DEFAULT_FRINGE_SAMPLES):
    return 2 * math.pi * np.arange(K) / K


def extract_fringe(samples, tol=STRUCTURAL_TOL, spacing_tol=1e-9):
    """Fit ``(1 + G cos(chi - g)) / 2`` to ``K >= 3`` samples at ``chi_k = 2 pi k / K``.

    Uses the first discrete Fourier harmonic, which for equally spaced
    samples is the least-squares fit of the cosine model.
    """
    arr = np.asarray(samples, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ComplementarityError("samples must be a sequence of (chi, P) pairs")
    K = arr.shape[0]
    if K < 3:
        raise ComplementarityError(f"need at least 3 samples, got {K}")
    chi, prob = arr[:, 0], arr[:, 1]
    if np.max(np.abs(chi - fringe_grid(K))) > spacing_tol:
        raise ComplementarityError("samples must be equally spaced at chi_k = 2 pi k / K")
    coeff = 4.0 / K * np.sum(prob * np.exp(1j * chi))
    vis = abs(coeff)
    if vis <= tol:
        return FringeFit(float(vis), 0.0, True)
    return FringeFit(float(min(vis, 1.0)), _wrap_phase(float(np.angle(coeff))), False)


def sample_fringe(state_fn, K=DEFAULT_FRINGE_SAMPLES):
    """``[(chi_k, P(chi_k))]`` where ``state_fn(chi)`` returns the output state."""
    return [(chi, detection_probability(state_fn(chi))) for chi in fringe_grid(K)]
