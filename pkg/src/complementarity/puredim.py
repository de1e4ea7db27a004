"""Pure bipartite states in Schmidt form: visibility, entropy and Haar averages."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._validation import ComplementarityError, DomainError

DEFAULT_HAAR_SEED = 20240601


@dataclass(frozen=True)
class SchmidtState:
    """Schmidt probabilities ``c_m`` of ``sum_m sqrt(c_m) |m>|m>``."""

    c: tuple

    def __post_init__(self):
        c = tuple(float(v) for v in self.c)
        if len(c) < 1:
            raise ComplementarityError("need at least one Schmidt coefficient")
        if min(c) < 0:
            raise DomainError(f"Schmidt probabilities must be non-negative, got {c}")
        if abs(sum(c) - 1.0) > 1e-12:
            raise DomainError(f"Schmidt probabilities sum to {sum(c):.15g}, expected 1")
        object.__setattr__(self, "c", c)

    @property
    def n(self):
        return len(self.c)

    @property
    def argmax(self):
        # lowest index among ties
        return int(np.argmax(self.c))

    @property
    def c_max(self):
        return self.c[self.argmax]

    def vector(self):
        psi = np.zeros(self.n * self.n, dtype=complex)
        for m, cm in enumerate(self.c):
            psi[m * self.n + m] = math.sqrt(cm)
        return psi


@dataclass(frozen=True)
class PureQubitPair:
    """Real amplitudes of ``a|0> + b|1>``."""

    a: float
    b: float

    def __post_init__(self):
        if abs(self.a ** 2 + self.b ** 2 - 1.0) > 1e-12:
            raise DomainError(f"a^2 + b^2 = {self.a ** 2 + self.b ** 2:.15g}, expected 1")

    @classmethod
    def from_a(cls, a):
        if not -1.0 <= a <= 1.0:
            raise DomainError(f"|a| must not exceed 1, got {a}")
        return cls(a, math.sqrt(max(1.0 - a * a, 0.0)))


def path_rotation(chi):
    """``exp(-i chi sigma_x / 2)`` on the path qubit."""
    c, s = math.cos(chi / 2), math.sin(chi / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def pure_output_state(pair, chi):
    """``(R(chi) (x) I)(a|00> + b|11>)`` with the path rotation ``R = exp(-i chi sigma_x / 2)``.

    Amplitudes are ordered ``|path, internal>``. The interferometer circuit
    with ``U = sigma_z`` produces the same state up to ``sigma_z`` on the
    internal qubit, which changes neither the path statistics nor the
    entanglement.
    """
    schmidt = np.array([pair.a, 0, 0, pair.b], dtype=complex)
    return np.kron(path_rotation(chi), np.eye(2)) @ schmidt


def path_zero_probability(psi, n=2):
    """Probability of ``|0>_path`` for a pure bipartite state vector."""
    amp = np.asarray(psi).reshape(n, -1)
    return float(np.sum(np.abs(amp[0]) ** 2))


def _bits(probs):
    p = np.asarray(probs, dtype=float)
    p = p[p > 0]
    return float(-np.sum(p * np.log2(p))) + 0.0


def pure_complementarity(pair):
    """``(Gamma, N, E)`` for the Schmidt pair: visibility, negativity and entropy in bits."""
    a2, b2 = pair.a ** 2, pair.b ** 2
    return abs(a2 - b2), 2 * abs(pair.a * pair.b), _bits([a2, b2])


def schmidt_visibility(state):
    """``2 (c_max - 1/n)``: fringe maximum over path unitaries minus the Haar average."""
    if state.n < 2:
        raise ComplementarityError("visibility needs n >= 2")
    return max(2.0 * (state.c_max - 1.0 / state.n), 0.0)


def schmidt_entropy(state):
    return _bits(state.c)


def entropy_visibility_tradeoff(state, k, step):
    """Move ``step`` of probability from ``c_k`` to ``c_max``; return ``(dE, dGamma)``."""
    j = state.argmax
    if k == j:
        raise ComplementarityError("k must differ from the index of c_max")
    if not 0 <= k < state.n:
        raise ComplementarityError(f"index {k} out of range for n={state.n}")
    if not 0 < step <= min(state.c[k], 1.0 - state.c_max):
        raise DomainError(f"step {step} is not feasible")
    c = list(state.c)
    c[j] += step
    c[k] -= step
    moved = SchmidtState(tuple(c))
    d_e = schmidt_entropy(moved) - schmidt_entropy(state)
    d_g = schmidt_visibility(moved) - schmidt_visibility(state)
    if state.c_max >= state.c[k] and (d_e > 1e-15 or d_g < -1e-15):
        raise ArithmeticError(f"transfer toward c_max gave dE={d_e}, dGamma={d_g}")
    return d_e, d_g


def haar_unitaries(n, size, rng):
    """``size`` Haar-random ``n x n`` unitaries via QR of complex Gaussians with phase fix."""
    z = (rng.standard_normal((size, n, n)) + 1j * rng.standard_normal((size, n, n))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=1, axis2=2)
    return q * (d / np.abs(d))[:, None, :]


def detection_probabilities(state, unitaries):
    """``P(U) = sum_m c_m |<0|U|m>|^2`` for a stack of path unitaries."""
    u = np.asarray(unitaries)
    return np.abs(u[..., 0, :]) ** 2 @ np.asarray(state.c)


def maximizing_unitary(state):
    """Permutation unitary sending the largest Schmidt vector to ``|0>``."""
    perm = np.eye(state.n, dtype=complex)
    j = state.argmax
    perm[[0, j]] = perm[[j, 0]]
    return perm


@dataclass(frozen=True)
class HaarProbe:
    mean: float
    max: float
    std_error: float
    samples: int


def haar_probe(state, samples=100_000, seed=DEFAULT_HAAR_SEED, batch=20_000):
    """Monte-Carlo mean and maximum of ``P(U)`` over Haar-random path unitaries."""
    samples = int(samples)
    if samples < 1000:
        raise ComplementarityError(f"need at least 1000 samples, got {samples}")
    rng = np.random.default_rng(seed)
    values = []
    done = 0
    while done < samples:
        m = min(batch, samples - done)
        values.append(detection_probabilities(state, haar_unitaries(state.n, m, rng)))
        done += m
    p = np.concatenate(values)
    return HaarProbe(float(p.mean()), float(p.max()), float(p.std(ddof=1) / math.sqrt(samples)), samples)
