"""Seeded property suite run by ``complementarity verify``.

Every property reports its worst residual against a tolerance. Passing
``tol`` replaces the tolerance of every numeric property; counting and
statistical properties keep their own thresholds.
"""
from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

from . import channels, figures, interferometer as itf, measures, numerics, oracles, puredim
from .channels import NoiseParams
from .interferometer import UnitaryParams

DEFAULT_SEED = 12345


@dataclass(frozen=True)
class PropertyResult:
    name: str
    residual: float
    tol: float
    passed: bool


_REGISTRY = []


def prop(name, tol, numeric=True):
    def register(fn):
        _REGISTRY.append((name, fn, tol, numeric))
        return fn
    return register


def property_names():
    return [name for name, *_ in _REGISTRY]


def random_params(rng):
    v = rng.normal(size=4)
    return UnitaryParams(*(v / np.linalg.norm(v)))


def random_model(rng, noisy=True):
    b0 = rng.uniform(0, 1)
    chi = rng.uniform(0, 2 * math.pi)
    noise = NoiseParams(*rng.uniform(0, 1, 2)) if noisy else NoiseParams()
    return b0, chi, random_params(rng), noise


def _state(b0, chi, params, noise=NoiseParams()):
    return channels.noisy_output_state(b0, chi, itf.build_internal_unitary(params), noise)


def _tx0_state(b0, z, noise, chi=0.0):
    params = UnitaryParams.complete("y", t=0.0, x=0.0, z=z)
    return _state(b0, chi, params, noise)


def _random_density(rng, n=4):
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    m = g @ g.conj().T
    return m / np.trace(m).real


# --- numerics -----------------------------------------------------------------

@prop("kron is associative and bilinear", 1e-12)
def _kron_algebra(rng):
    worst = 0.0
    for _ in range(20):
        a, b, c, d = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(4))
        s = complex(rng.normal(), rng.normal())
        worst = max(
            worst,
            np.max(np.abs(numerics.kron(numerics.kron(a, b), c) - numerics.kron(a, numerics.kron(b, c)))),
            np.max(np.abs(numerics.kron(a + s * d, b) - (numerics.kron(a, b) + s * numerics.kron(d, b)))),
        )
    return worst


@prop("partial transpose is a trace- and Hermiticity-preserving involution", 1e-12)
def _pt_involution(rng):
    worst = 0.0
    for _ in range(20):
        rho = _random_density(rng)
        for sub in (0, 1):
            pt = numerics.partial_transpose(rho, sub)
            worst = max(
                worst,
                np.max(np.abs(numerics.partial_transpose(pt, sub) - rho)),
                abs(np.trace(pt) - 1),
                np.max(np.abs(pt - pt.conj().T)),
            )
    return worst


@prop("interferometer outputs are Hermitian, unit-trace and PSD", 1e-9)
def _outputs_valid(rng):
    worst = 0.0
    for _ in range(50):
        m = _state(*random_model(rng)).matrix
        lam = numerics.hermitian_eigenvalues(m)
        worst = max(worst, np.max(np.abs(m - m.conj().T)), abs(np.trace(m) - 1), max(-lam[0], 0.0),
                    abs(lam.sum() - 1))
    return worst


@prop("power-trace characteristic polynomial equals determinant expansion", 1e-10)
def _charpoly(rng):
    worst = 0.0
    for _ in range(20):
        pt = numerics.partial_transpose(_state(*random_model(rng)), 1)
        worst = max(worst, np.max(np.abs(np.subtract(numerics.char_poly_coeffs_from_traces(pt),
                                                     oracles.charpoly_leibniz(pt)))))
    return worst


@prop("eigensolver roots annihilate the characteristic polynomial", 1e-9)
def _eig_roots(rng):
    worst = 0.0
    for _ in range(20):
        g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        h = (g + g.conj().T) / 4
        coeffs = oracles.charpoly_leibniz(h)
        for lam in numerics.hermitian_eigenvalues(h):
            worst = max(worst, abs(numerics.char_poly_eval(coeffs, lam)))
    return worst


# --- interferometer -----------------------------------------------------------

@prop("interferometer circuit is unitary", 1e-12)
def _circuit_unitary(rng):
    worst = 0.0
    for chi in np.linspace(0, 2 * math.pi, 7):
        for _ in range(7):
            V = itf.build_circuit(chi, itf.build_internal_unitary(random_params(rng)))
            worst = max(worst, np.max(np.abs(V.conj().T @ V - np.eye(4))))
    return worst


@prop("gate-level output equals the four-block expansion", 1e-12)
def _expansion(rng):
    worst = 0.0
    for b0 in np.linspace(0, 1, 5):
        for chi in np.linspace(0, 2 * math.pi, 5, endpoint=False):
            for _ in range(5):
                U = itf.build_internal_unitary(random_params(rng))
                worst = max(worst, np.max(np.abs(itf.output_state(b0, chi, U).matrix
                                                 - itf.output_state_expanded(b0, chi, U).matrix)))
    return worst


@prop("detection probability follows the analytic cosine fringe", 1e-10)
def _fringe_cosine(rng):
    worst = 0.0
    for _ in range(20):
        b0, _, params, _ = random_model(rng, noisy=False)
        fit = itf.analytic_visibility_phase(params.t, params.z, b0)
        U = itf.build_internal_unitary(params)
        for chi in np.linspace(0, 2 * math.pi, 13):
            p = itf.detection_probability(itf.output_state(b0, chi, U))
            worst = max(worst, abs(p - 0.5 * (1 + fit.visibility * math.cos(chi - fit.phase))))
    return worst


@prop("fringe extraction recovers the analytic visibility and phase", 1e-10)
def _fringe_roundtrip(rng):
    worst = 0.0
    for _ in range(30):
        b0, _, params, noise = random_model(rng)
        U = itf.build_internal_unitary(params)
        fit = itf.extract_fringe(itf.sample_fringe(lambda c: channels.noisy_output_state(b0, c, U, noise)))
        ref = itf.analytic_visibility_phase(params.t, params.z, b0, noise.alpha_q)
        dphase = abs(math.remainder(fit.phase - ref.phase, 2 * math.pi)) if ref.visibility > 1e-6 else 0.0
        worst = max(worst, abs(fit.visibility - ref.visibility), dphase)
    return worst


@prop("visibility does not depend on x and y", 1e-12)
def _visibility_xy(rng):
    worst = 0.0
    for _ in range(10):
        b0, t, z = rng.uniform(0, 1), rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6)
        r = math.sqrt(1 - t * t - z * z)
        vis = []
        for ang in np.linspace(0, 2 * math.pi, 6):
            U = itf.build_internal_unitary(UnitaryParams(t, r * math.cos(ang), r * math.sin(ang), z))
            vis.append(itf.extract_fringe(itf.sample_fringe(lambda c: itf.output_state(b0, c, U))).visibility)
        worst = max(worst, max(vis) - min(vis))
    return worst


# --- channels -----------------------------------------------------------------

@prop("noise channels preserve trace, Hermiticity and positivity", 1e-9)
def _channels_cp(rng):
    worst = 0.0
    for _ in range(30):
        rho = _random_density(rng)
        p = rng.uniform()
        for out in (channels.apply_bit_flip(rho, p), channels.apply_phase_noise(rho, p)):
            m = out.matrix
            worst = max(worst, abs(np.trace(m) - 1), np.max(np.abs(m - m.conj().T)),
                        max(-numerics.hermitian_eigenvalues(m)[0], 0.0))
    return worst


@prop("bit-flip and phase channels commute", 1e-12)
def _channels_commute(rng):
    worst = 0.0
    for _ in range(20):
        rho = _random_density(rng)
        p, q = rng.uniform(0, 1, 2)
        a = channels.apply_phase_noise(channels.apply_bit_flip(rho, p), q).matrix
        b = channels.apply_bit_flip(channels.apply_phase_noise(rho, q), p).matrix
        worst = max(worst, np.max(np.abs(a - b)))
    return worst


@prop("noisy gate-level output equals the closed-form Pauli parametrisation", 1e-10)
def _pauli_closed(rng):
    worst = 0.0
    for _ in range(200):
        b0, chi, params, noise = random_model(rng)
        gate = _state(b0, chi, params, noise).matrix
        closed = channels.closed_form_pauli(b0, chi, params, noise)
        dec = channels.pauli_decompose(gate)
        worst = max(worst, np.max(np.abs(gate - closed.to_matrix().matrix)),
                    np.max(np.abs(dec.c - closed.c)), np.max(np.abs(dec.a - closed.a)),
                    np.max(np.abs(dec.b - closed.b)))
    return worst


@prop("phase noise scales the fringe visibility by |alpha_q|", 1e-10)
def _noisy_visibility(rng):
    worst = 0.0
    for _ in range(30):
        b0, _, params, noise = random_model(rng)
        U = itf.build_internal_unitary(params)
        fit = itf.extract_fringe(itf.sample_fringe(lambda c: channels.noisy_output_state(b0, c, U, noise)))
        expected = abs(noise.alpha_q) * math.sqrt(params.t ** 2 + b0 ** 2 * params.z ** 2)
        worst = max(worst, abs(fit.visibility - expected))
    return worst


# --- measures -----------------------------------------------------------------

@prop("at most one negative partial-transpose eigenvalue", 0, numeric=False)
def _one_negative(rng):
    worst = 0
    for _ in range(100):
        lam = measures.pt_eigenvalues(_state(*random_model(rng)))
        worst = max(worst, numerics.count_negative(lam) - 1)
    return max(worst, 0)


@prop("negativity does not depend on the transposed subsystem", 1e-10)
def _neg_subsystem(rng):
    worst = 0.0
    for _ in range(50):
        rho = _state(*random_model(rng))
        worst = max(worst, abs(measures.negativity(rho, 0) - measures.negativity(rho, 1)))
    return worst


@prop("t = 0 negativity closed form matches the numeric negativity", 1e-9)
def _t0_closed(rng):
    worst = 0.0
    for _ in range(200):
        b0, z, ang = rng.uniform(0, 1), rng.uniform(-1, 1), rng.uniform(0, 2 * math.pi)
        r = math.sqrt(1 - z * z)
        params = UnitaryParams(0.0, r * math.cos(ang), r * math.sin(ang), z)
        n = measures.negativity(_state(b0, rng.uniform(0, 2 * math.pi), params))
        worst = max(worst, abs(n - measures.negativity_t0_closed(b0, b0 * abs(z))))
    return worst


def _tx0_sample(rng):
    while True:
        b0, z = rng.uniform(0, 1), rng.uniform(-1, 1)
        noise = NoiseParams(*rng.uniform(0, 1, 2))
        if abs(noise.alpha_q) > 1e-3:
            return b0, z, noise, abs(noise.alpha_q) * b0 * abs(z)


@prop("t = x = 0 closed-form spectrum matches the numeric spectrum", 1e-9)
def _tx0_spectrum(rng):
    worst = 0.0
    for _ in range(200):
        b0, z, noise, vis = _tx0_sample(rng)
        lam = measures.pt_eigenvalues(_tx0_state(b0, z, noise))
        worst = max(worst, np.max(np.abs(lam - measures.pt_spectrum_tx0(b0, vis, noise))))
    return worst


@prop("t = x = 0 closed-form noisy negativity matches the numeric negativity", 1e-9)
def _tx0_negativity(rng):
    worst = 0.0
    for _ in range(200):
        b0, z, noise, vis = _tx0_sample(rng)
        n = measures.negativity(_tx0_state(b0, z, noise))
        worst = max(worst, abs(n - measures.negativity_noisy_closed(b0, vis, noise)))
    return worst


@prop("noisy closed-form coefficients match the power-trace coefficients", 1e-10)
def _kimura_noisy(rng):
    worst = 0.0
    for _ in range(100):
        b0, z, noise, _ = _tx0_sample(rng)
        pt = numerics.partial_transpose(_tx0_state(b0, z, noise), 1)
        worst = max(worst, np.max(np.abs(np.subtract(measures.kimura_tx0(b0, z, noise),
                                                     numerics.char_poly_coeffs_from_traces(pt)))))
    return worst


@prop("noiseless a4 is negative unless x = y = 0, where it vanishes", 1e-12)
def _a4_sign(rng):
    worst = 0.0
    for _ in range(50):
        b0, chi, params, _ = random_model(rng, noisy=False)
        a4 = numerics.char_poly_coeffs_from_traces(numerics.partial_transpose(_state(b0, chi, params), 1))[3]
        worst = max(worst, abs(a4 - measures.kimura_noiseless(b0, params)[3]), max(a4, 0.0) if b0 > 0 else 0.0)
        t, z = params.t, params.z
        s = math.hypot(t, z)
        flat = UnitaryParams(t / s, 0.0, 0.0, z / s)
        a4_flat = numerics.char_poly_coeffs_from_traces(numerics.partial_transpose(_state(b0, chi, flat), 1))[3]
        worst = max(worst, abs(a4_flat))
    return worst


@prop("quartic form vanishes at the smallest partial-transpose eigenvalue", 1e-9)
def _quartic(rng):
    worst = 0.0
    for _ in range(50):
        b0, chi, params, _ = random_model(rng, noisy=False)
        fit = itf.analytic_visibility_phase(params.t, params.z, b0)
        form = measures.quartic_form(b0, fit.visibility, fit.phase)
        lam = measures.pt_eigenvalues(_state(b0, chi, params))[0]
        worst = max(worst, abs(form(lam)))
    return worst


@prop("entropy from visibility equals the path-marginal entropy for pure inputs", 1e-10)
def _entropy_pure(rng):
    worst = 0.0
    for _ in range(30):
        _, chi, params, _ = random_model(rng, noisy=False)
        rho = _state(1.0, chi, params)
        vis = itf.analytic_visibility_phase(params.t, params.z, 1.0).visibility
        s = measures.von_neumann_entropy(numerics.partial_trace(rho, 1))
        worst = max(worst, abs(s - measures.entropy_from_visibility(vis)))
    return worst


@prop("negativity strictly decreases with visibility where entangled", 0, numeric=False)
def _monotone(rng):
    violations = 0
    for _ in range(10):
        b0 = rng.uniform(0.3, 1)
        noise = NoiseParams(rng.uniform(0, 0.15), rng.uniform(0, 0.15))
        top = abs(noise.alpha_q) * b0
        grid = np.linspace(0.01 * top, 0.99 * top, 25)
        for _, n, slope in measures.monotonicity_check(b0, grid, noise):
            if slope is not None and slope >= 0:
                violations += 1

        def numeric(g, b0=b0, noise=noise):
            return measures.negativity(_tx0_state(b0, g / (abs(noise.alpha_q) * b0), noise))
        for _, n, slope in measures.monotonicity_check(b0, grid, noise, numeric):
            if slope is not None and slope >= 0:
                violations += 1
    return violations


@prop("bisection on the minimal eigenvalue recovers the separability boundary", 1e-8)
def _boundary(rng):
    worst = 0.0
    b0 = 0.7
    for vis in (0.0, 0.2, 0.4):
        ref = measures.separability_boundary(b0, vis)

        def lam_min(p, vis=vis):
            return measures.pt_eigenvalues(_tx0_state(b0, vis / b0, NoiseParams(p, 0.0)))[0]
        p_minus = oracles.bisect_sign_change(lam_min, 0.0, 0.5, tol=1e-10)
        p_plus = oracles.bisect_sign_change(lam_min, 0.5, 1.0, tol=1e-10)
        worst = max(worst, abs(p_minus - ref.p_minus), abs(p_plus - ref.p_plus))
    return worst


@prop("noisy negativity lies on its ellipse", 1e-10)
def _ellipse(rng):
    worst = 0.0
    for _ in range(50):
        b0 = rng.uniform(0.5, 1)
        noise = NoiseParams(rng.uniform(0, 0.1), rng.uniform(0, 0.1))
        vis = rng.uniform(0, 1) * abs(noise.alpha_q) * b0
        if measures.negativity_noisy_closed(b0, vis, noise) > 0:
            worst = max(worst, abs(measures.ellipse_residual(b0, vis, noise)))
    return worst


# --- pure states --------------------------------------------------------------

@prop("pure-state complementarity N^2 + Gamma^2 = 1", 1e-12)
def _pure_circle(rng):
    worst = 0.0
    for a in np.linspace(0, 1, 101):
        g, n, _ = puredim.pure_complementarity(puredim.PureQubitPair.from_a(a))
        worst = max(worst, abs(n * n + g * g - 1))
    return worst


@prop("Schmidt-form output matches the gate-level pipeline", 1e-12)
def _pure_vs_gate(rng):
    worst = 0.0
    flip = np.kron(np.eye(2), numerics.SIGMA_Z)
    for _ in range(20):
        pair = puredim.PureQubitPair.from_a(rng.uniform(-1, 1))
        chi = rng.uniform(0, 2 * math.pi)
        psi = flip @ puredim.pure_output_state(pair, chi)
        rho0 = np.outer([pair.a, pair.b], [pair.a, pair.b])
        gate = itf.output_state(rho0, chi, numerics.SIGMA_Z).matrix
        worst = max(worst, 1 - (psi.conj() @ gate @ psi).real)
    return worst


@prop("moving weight toward c_max lowers the Schmidt entropy", 0, numeric=False)
def _transfer(rng):
    violations = 0
    for _ in range(50):
        n = int(rng.integers(2, 6))
        state = puredim.SchmidtState(tuple(rng.dirichlet(np.ones(n))))
        k = int(rng.choice([i for i in range(n) if i != state.argmax]))
        step = rng.uniform(0, 1) * min(state.c[k], 1 - state.c_max)
        if step <= 0:
            continue
        d_e, d_g = puredim.entropy_visibility_tradeoff(state, k, step)
        violations += int(not (d_e < 0 and d_g > 0))
    return violations


@prop("Haar probe mean is within 4 standard errors of 1/n (units of SE)", 4.0, numeric=False)
def _haar_mean(rng, seed=DEFAULT_SEED):
    worst = 0.0
    for c in ((0.8, 0.2), (0.5, 0.3, 0.2), (0.4, 0.3, 0.2, 0.1)):
        state = puredim.SchmidtState(c)
        probe = puredim.haar_probe(state, 20_000, seed)
        worst = max(worst, abs(probe.mean - 1 / state.n) / probe.std_error)
    return worst


@prop("Haar probe never exceeds c_max and the maximiser attains it", 1e-12)
def _haar_max(rng, seed=DEFAULT_SEED):
    worst = 0.0
    for c in ((0.8, 0.2), (0.5, 0.3, 0.2), (0.4, 0.3, 0.2, 0.1)):
        state = puredim.SchmidtState(c)
        probe = puredim.haar_probe(state, 20_000, seed)
        best = puredim.detection_probabilities(state, puredim.maximizing_unitary(state))
        worst = max(worst, max(probe.max - state.c_max, 0.0), abs(best - state.c_max))
    return worst


@prop("Schmidt visibility lies in [0, 2(1 - 1/n)]", 1e-12)
def _schmidt_range(rng):
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(2, 8))
        state = puredim.SchmidtState(tuple(rng.dirichlet(np.ones(n))))
        g = puredim.schmidt_visibility(state)
        worst = max(worst, max(-g, 0.0), max(g - 2 * (1 - 1 / n), 0.0))
    return worst


# --- datasets -----------------------------------------------------------------

def _csv_bytes(header, rows):
    from .cli import write_csv

    buf = io.StringIO()
    write_csv(buf, header, rows)
    return buf.getvalue().encode()


@prop("CSV datasets are byte-stable across runs", 0, numeric=False)
def _csv_stable(rng):
    runs = [_csv_bytes(*figures.fig6_rows(steps=11)) for _ in range(2)]
    runs += [_csv_bytes(*figures.fig8_rows(steps=21)) for _ in range(2)]
    return int(runs[0] != runs[1]) + int(runs[2] != runs[3])


@prop("figure datasets decrease along visibility (violations)", 0, numeric=False)
def _figure_monotone(rng):
    bad = 0
    for header, rows in (figures.fig4_rows(steps=21), figures.fig6_rows(steps=21),
                         figures.fig6_rows(p=0.5, steps=11)):
        bad += figures.column_is_decreasing(rows, 2, 3, group_index=0)[2]
    header, rows = figures.fig8_rows(steps=51)
    bad += figures.column_is_decreasing(rows, 0, 1)[2]
    return bad


def run_suite(tol=None, seed=DEFAULT_SEED, only=None):
    """Run every registered property; return a list of :class:`PropertyResult`."""
    results = []
    for idx, (name, fn, default_tol, numeric) in enumerate(_REGISTRY):
        if only is not None and name not in only:
            continue
        rng = np.random.default_rng([seed, idx])
        if fn.__code__.co_argcount > 1:
            residual = fn(rng, seed=seed)
        else:
            residual = fn(rng)
        limit = tol if (tol is not None and numeric) else default_tol
        results.append(PropertyResult(name, float(residual), float(limit), bool(residual <= limit)))
    return results
