"""Bit-flip and path phase-noise channels inside the interferometer arms."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._validation import ComplementarityError, check_probability
from .interferometer import BEAM_SPLITTER, MIRRORS, conditional_gate, input_state, internal_state
from .numerics import I2, PAULIS, SIGMA_X, SIGMA_Z, DensityMatrix, kron

BIT_FLIP_OP = kron(I2, SIGMA_X)
PHASE_FLIP_OP = kron(SIGMA_Z, I2)


@dataclass(frozen=True)
class NoiseParams:
    """Bit-flip probability ``p`` on the internal qubit, phase-flip probability ``q`` on the path."""

    p: float = 0.0
    q: float = 0.0

    def __post_init__(self):
        check_probability(self.p, "p")
        check_probability(self.q, "q")

    @property
    def alpha_p(self):
        return 1.0 - 2.0 * self.p

    @property
    def alpha_q(self):
        return 1.0 - 2.0 * self.q

    @property
    def mu_p(self):
        return self.p * (1.0 - self.p)

    @property
    def mu_q(self):
        return self.q * (1.0 - self.q)


@dataclass(frozen=True)
class PauliDecomposition:
    """``rho = (I + a.s (x) I + I (x) b.s + sum c_ij s_i (x) s_j) / 4``."""

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray

    def to_matrix(self):
        m = kron(I2, I2)
        for i, si in enumerate(PAULIS):
            m = m + self.a[i] * kron(si, I2) + self.b[i] * kron(I2, si)
            for j, sj in enumerate(PAULIS):
                m = m + self.c[i, j] * kron(si, sj)
        return DensityMatrix(m / 4, (2, 2))


def _mix(rho, op, prob):
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, complex)
    if m.shape != (4, 4):
        raise ComplementarityError(f"expected a two-qubit state, got shape {m.shape}")
    return DensityMatrix((1 - prob) * m + prob * op @ m @ op.conj().T, (2, 2))


def apply_bit_flip(rho, p):
    """Flip the internal qubit with probability ``p``."""
    return _mix(rho, BIT_FLIP_OP, check_probability(p, "p"))


def apply_phase_noise(rho, q):
    """Apply ``sigma_z`` to the path qubit with probability ``q``."""
    return _mix(rho, PHASE_FLIP_OP, check_probability(q, "q"))


def noisy_output_state(b0, chi, U, noise=NoiseParams()):
    """Output state with both channels acting after the mirrors, before the last beam splitter."""
    v_h = BEAM_SPLITTER
    v0 = MIRRORS @ conditional_gate(chi, np.asarray(U, complex)) @ v_h
    rho_in = input_state(internal_state(b0)).matrix
    rho = DensityMatrix(v0 @ rho_in @ v0.conj().T, (2, 2))
    rho = apply_phase_noise(apply_bit_flip(rho, noise.p), noise.q)
    return DensityMatrix(v_h @ rho.matrix @ v_h.conj().T, (2, 2))


def pauli_decompose(rho):
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, complex)
    if m.shape != (4, 4):
        raise ComplementarityError(f"expected a two-qubit state, got shape {m.shape}")
    a = np.array([np.trace(m @ kron(s, I2)).real for s in PAULIS])
    b = np.array([np.trace(m @ kron(I2, s)).real for s in PAULIS])
    c = np.array([[np.trace(m @ kron(si, sj)).real for sj in PAULIS] for si in PAULIS])
    return PauliDecomposition(a, b, c)


def closed_form_pauli(b0, chi, params, noise=NoiseParams()):
    """Closed-form Pauli components of the noisy output for ``b0`` along z.

    Rows of ``c`` are indexed by the path Pauli operator.
    """
    t, x, y, z = params.as_tuple()
    ap, aq = noise.alpha_p, noise.alpha_q
    s, co = math.sin(chi), math.cos(chi)
    a = aq * np.array([0.0, -(t * s - b0 * z * co), t * co + b0 * z * s])
    b = b0 * np.array([-t * y + x * z, ap * (t * x + y * z), ap * (t * t + z * z)])
    c_x = b0 * np.array([-t * y + x * z, ap * (t * x + y * z), -ap * (x * x + y * y)])
    c_y = aq * np.array([x * co + b0 * y * s, ap * (y * co - b0 * x * s), ap * (z * co - b0 * t * s)])
    c_z = aq * np.array([x * s - b0 * y * co, ap * (y * s + b0 * x * co), ap * (z * s + b0 * t * co)])
    return PauliDecomposition(a, b, np.array([c_x, c_y, c_z]))
