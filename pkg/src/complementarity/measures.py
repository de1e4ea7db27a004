"""Entanglement measures and closed-form negativity results for the interferometer output."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._validation import SPECTRAL_TOL, ComplementarityError, DomainError, check_in_range
from .channels import NoiseParams
from .numerics import hermitian_eigenvalues, partial_transpose


@dataclass(frozen=True)
class QuarticForm:
    """Coefficients of ``F(l) = l^4 - l^3 + alpha l^2 + beta l - beta gamma`` (noiseless model)."""

    alpha: float
    beta: float
    gamma: float
    delta: float

    def __call__(self, lam):
        return lam ** 4 - lam ** 3 + self.alpha * lam ** 2 + self.beta * lam - self.beta * self.gamma

    def derivative(self, lam):
        return 4 * lam ** 3 - 3 * lam ** 2 + 2 * self.alpha * lam + self.beta

    def negativity_slope(self, lam, visibility):
        """``dN/dGamma`` at the root ``lam`` by implicit differentiation of ``F``."""
        rhs = visibility * (self.beta + (self.gamma + abs(lam)) * self.delta)
        return rhs / self.derivative(lam)


@dataclass(frozen=True)
class SeparabilityBoundary:
    p_minus: float
    p_plus: float


def pt_eigenvalues(rho, subsystem=1):
    return hermitian_eigenvalues(partial_transpose(rho, subsystem))


def negativity(rho, subsystem=1, tol=SPECTRAL_TOL):
    """Twice the magnitude of the negative part of the partial-transpose spectrum."""
    lam = pt_eigenvalues(rho, subsystem)
    return float(2.0 * -np.sum(lam[lam < -tol])) + 0.0


def negativity_t0_closed(b0, visibility):
    """Noiseless negativity for ``t = 0``: ``sqrt(b0^2 - Gamma^2)``."""
    if visibility < 0 or visibility > b0 + 1e-12 or b0 > 1:
        raise DomainError(f"need 0 <= Gamma <= b0 <= 1, got Gamma={visibility}, b0={b0}")
    return math.sqrt(max(b0 * b0 - visibility * visibility, 0.0))


def _require_phase_contrast(noise):
    if noise.alpha_q == 0:
        raise DomainError("alpha_q = 0 (q = 1/2): closed form undefined, use the numeric negativity")


def pt_spectrum_tx0(b0, visibility, noise=NoiseParams()):
    """Closed-form partial-transpose spectrum for ``t = x = 0``, sorted ascending."""
    _require_phase_contrast(noise)
    ap, aq = noise.alpha_p, noise.alpha_q
    if visibility > abs(aq) * b0 + 1e-12:
        raise DomainError(f"Gamma={visibility} exceeds |alpha_q| b0 = {abs(aq) * b0}")
    g2 = visibility * visibility
    r1 = math.sqrt(max(b0 * b0 * (ap + aq) ** 2 - 4 * g2 * ap / aq, 0.0))
    r2 = math.sqrt(max(b0 * b0 * (ap - aq) ** 2 + 4 * g2 * ap / aq, 0.0))
    lam = [
        (1 - ap * aq - r1) / 4,
        (1 + ap * aq - r2) / 4,
        (1 - ap * aq + r1) / 4,
        (1 + ap * aq + r2) / 4,
    ]
    return np.sort(lam)


def _noisy_radicand(b0, visibility, noise):
    ap, aq = abs(noise.alpha_p), abs(noise.alpha_q)
    return b0 * b0 * (ap + aq) ** 2 - 4 * visibility ** 2 * ap / aq


def negativity_noisy_closed(b0, visibility, noise=NoiseParams()):
    """Closed-form negativity for ``t = x = 0`` with both channels, clamped at zero."""
    _require_phase_contrast(noise)
    ap, aq = abs(noise.alpha_p), abs(noise.alpha_q)
    root = math.sqrt(max(_noisy_radicand(b0, visibility, noise), 0.0))
    return max(0.0, 0.5 * (-1 + ap * aq + root))


def noisy_negativity_slope(b0, visibility, noise=NoiseParams()):
    """Analytic ``dN/dGamma`` of the closed-form noisy negativity inside the entangled region."""
    _require_phase_contrast(noise)
    ap, aq = abs(noise.alpha_p), abs(noise.alpha_q)
    rad = _noisy_radicand(b0, visibility, noise)
    if rad <= 0:
        raise DomainError("radicand is not positive; slope undefined")
    return -2.0 * (ap / aq) * visibility / math.sqrt(rad)


def ellipse_residual(b0, visibility, noise=NoiseParams()):
    """``N'^2/a^2 + Gamma^2/b^2 - 1`` for the shifted negativity ``N' = N + (1 - |a_p||a_q|)/2``."""
    _require_phase_contrast(noise)
    ap, aq = abs(noise.alpha_p), abs(noise.alpha_q)
    if ap == 0:
        raise DomainError("alpha_p = 0: the ellipse degenerates")
    n = negativity_noisy_closed(b0, visibility, noise)
    shifted = n + (1 - ap * aq) / 2
    semi_a = b0 * (ap + aq) / 2
    semi_b = math.sqrt(aq / ap) * semi_a
    return shifted ** 2 / semi_a ** 2 + visibility ** 2 / semi_b ** 2 - 1


def separability_boundary(b0, visibility):
    """Bit-flip probabilities ``(p_-, p_+)`` bounding the separable window when ``q = 0``."""
    if b0 >= 1:
        raise DomainError("b0 = 1 makes the boundary formula singular")
    if not 0 <= visibility <= b0:
        raise DomainError(f"need 0 <= Gamma <= b0, got Gamma={visibility}, b0={b0}")
    ent = math.sqrt(b0 * b0 - visibility * visibility)
    mixed = math.sqrt(1 - visibility * visibility)
    denom = 1 - b0 * b0
    return SeparabilityBoundary(ent * (mixed - ent) / denom, mixed * (mixed - ent) / denom)


def quartic_form(b0, visibility, gamma_g):
    check_in_range(b0, 0.0, 1.0, "b0")
    check_in_range(visibility, 0.0, 1.0, "Gamma")
    delta = 1 - (1 - b0 * b0) * math.cos(gamma_g) ** 2
    return QuarticForm(
        alpha=(1 - b0 * b0) / 4,
        beta=(b0 * b0 - delta * visibility ** 2) / 4,
        gamma=(1 - visibility ** 2) / 4,
        delta=delta,
    )


def kimura_noiseless(b0, params):
    """Characteristic-polynomial coefficients of the partially transposed noiseless output."""
    _, x, y, z = params.as_tuple()
    r2 = x * x + y * y
    a2 = (1 - b0 * b0) / 4
    a3 = -b0 * b0 * r2 / 4
    a4 = -b0 * b0 * r2 * (r2 + z * z * (1 - b0 * b0)) / 16
    return 1.0, a2, a3, a4


def kimura_tx0(b0, z, noise=NoiseParams()):
    """Characteristic-polynomial coefficients for ``t = x = 0`` with bit-flip and phase noise."""
    b2, z2 = b0 * b0, z * z
    mp, mq = noise.mu_p, noise.mu_q
    s, pr = mp + mq, mp * mq
    a2 = ((1 - b2) + 2 * (1 + b2) * s - 8 * pr) / 4
    a3 = (-b2 * (1 - z2) + (1 + b2 * (3 - 4 * z2)) * s - 4 * (1 + 2 * b2 * (1 - 2 * z2)) * pr) / 4
    a4 = (
        -b2 * (1 - z2) * (1 - b2 * z2) * (1 - 4 * s)
        + (1 - b2) ** 2 * (mp ** 2 + mq ** 2)
        + 2 * (1 - 8 * b2 * (1 - z2) - b2 * b2 * (1 - 8 * z2 + 8 * z2 * z2)) * pr
        - 8 * (1 - b2) * pr * s
        + 16 * pr * pr
    ) / 16
    return 1.0, a2, a3, a4


def monotonicity_check(b0, visibilities, noise=NoiseParams(), negativity_fn=None, floor=1e-6):
    """Central-difference ``dN/dGamma`` along an ascending visibility grid.

    ``negativity_fn(Gamma)`` defaults to the closed-form noisy negativity.
    Returns ``[(Gamma, N, slope)]`` for interior points; the slope is ``None``
    where ``N <= floor``.
    """
    grid = np.asarray(visibilities, dtype=float)
    if grid.size < 5:
        raise ComplementarityError("visibility grid needs at least 5 points")
    if np.any(np.diff(grid) <= 0):
        raise ComplementarityError("visibility grid must be strictly ascending")
    if negativity_fn is None:
        def negativity_fn(g):
            return negativity_noisy_closed(b0, g, noise)
    values = [negativity_fn(g) for g in grid]
    rows = []
    for i in range(1, grid.size - 1):
        n = values[i]
        slope = None
        if n > floor and values[i - 1] > floor and values[i + 1] > floor:
            slope = (values[i + 1] - values[i - 1]) / (grid[i + 1] - grid[i - 1])
        rows.append((float(grid[i]), float(n), slope))
    return rows


def _entropy_bits(probs):
    p = np.asarray(probs, dtype=float)
    p = p[p > 0]
    return float(-np.sum(p * np.log2(p))) + 0.0


def von_neumann_entropy(rho, tol=SPECTRAL_TOL):
    """Entropy in bits; eigenvalues within ``tol`` of zero contribute nothing."""
    lam = hermitian_eigenvalues(rho)
    return _entropy_bits(np.where(lam > tol, lam, 0.0))


def entropy_from_visibility(visibility):
    """Binary entropy (bits) of the path marginal with eigenvalues ``(1 +- Gamma)/2``."""
    g = check_in_range(visibility, 0.0, 1.0, "Gamma")
    return _entropy_bits([(1 + g) / 2, (1 - g) / 2])
