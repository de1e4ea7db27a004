"""Acceptance criteria 1-9, each reported as one PASS/FAIL line."""
import math
import time

import numpy as np
import pytest

from complementarity import cli, figures, measures, puredim
from complementarity.channels import NoiseParams, noisy_output_state
from complementarity.interferometer import (
    UnitaryParams,
    analytic_visibility_phase,
    build_internal_unitary,
    extract_fringe,
    sample_fringe,
)
from complementarity.numerics import (
    char_poly_coeffs_from_traces,
    count_negative,
    hermitian_eigenvalues,
    partial_transpose,
)
from complementarity.oracles import bisect_sign_change, charpoly_leibniz

from conftest import random_params

B0 = 0.7
_START = time.perf_counter()


@pytest.fixture
def report(capsys):
    def emit(label, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'}  {label}: {detail}")
        assert ok, detail
    return emit


def tx0_state(b0, z, noise=NoiseParams(), chi=0.0):
    U = build_internal_unitary(UnitaryParams.complete("y", z=z))
    return noisy_output_state(b0, chi, U, noise)


def test_criterion_1_circle_law(report):
    worst = 0.0
    ends = {}
    for z in np.linspace(0, 1, 101):
        gamma = analytic_visibility_phase(0.0, z, B0).visibility
        n = measures.negativity(tx0_state(B0, z))
        worst = max(worst, abs(n - math.sqrt(max(B0 ** 2 - gamma ** 2, 0.0))))
        ends[round(gamma, 12)] = n
    ok = worst <= 1e-9 and abs(ends[0.0] - 0.7) <= 1e-9 and abs(ends[0.7]) <= 1e-9
    report("1 circle law", ok, f"max|dN|={worst:.2e}, N(0)={ends[0.0]:.12f}, N(0.7)={ends[0.7]:.2e}")


def test_criterion_2_pure_complementarity(report):
    worst = 0.0
    for a in np.linspace(0, 1, 1001):
        gamma, n, _ = puredim.pure_complementarity(puredim.PureQubitPair.from_a(a))
        worst = max(worst, abs(n * n + gamma * gamma - 1))
    _, _, e = puredim.pure_complementarity(puredim.PureQubitPair.from_a(math.sqrt(0.5)))
    ok = worst <= 1e-12 and abs(e - 1) <= 1e-12
    report("2 pure complementarity", ok, f"max|N^2+G^2-1|={worst:.2e}, E(1/2)={e:.15f}")


def test_criterion_3_noisy_closed_forms(report):
    rng = np.random.default_rng(3)
    spec_err = neg_err = 0.0
    done = 0
    while done < 200:
        b0, z, p, q = rng.uniform(0, 1, 4)
        noise = NoiseParams(p, q)
        if abs(noise.alpha_q) < 1e-6:
            continue
        rho = tx0_state(b0, z, noise, chi=rng.uniform(0, 2 * math.pi))
        gamma = analytic_visibility_phase(0.0, z, b0, noise.alpha_q).visibility
        lam = hermitian_eigenvalues(partial_transpose(rho.matrix))
        spec_err = max(spec_err, np.max(np.abs(lam - measures.pt_spectrum_tx0(b0, gamma, noise))))
        neg_err = max(neg_err, abs(measures.negativity(rho) - measures.negativity_noisy_closed(b0, gamma, noise)))
        done += 1
    _, rows = figures.fig6_rows(b0=B0, x=0.4, p=0.5, q=0.0, steps=101)
    max_n = max(r[3] for r in rows if r[3] is not None)
    ok = spec_err <= 1e-9 and neg_err <= 1e-9 and max_n == 0
    report("3 noisy closed forms", ok, f"spectrum {spec_err:.2e}, negativity {neg_err:.2e}, fig6(p=0.5) max N={max_n}")


def test_criterion_4_separability_boundary(report):
    worst = 0.0
    for gamma in (0.0, 0.2, 0.4):
        z = gamma / B0

        def lam_min(p):
            return hermitian_eigenvalues(partial_transpose(tx0_state(B0, z, NoiseParams(p, 0.0)).matrix))[0]

        b = measures.separability_boundary(B0, gamma)
        lo = bisect_sign_change(lam_min, 0.0, 0.5, tol=1e-12)
        hi = bisect_sign_change(lam_min, 0.5, 1.0, tol=1e-12)
        worst = max(worst, abs(lo - b.p_minus), abs(hi - b.p_plus))
    b0 = measures.separability_boundary(B0, 0.0)
    ok = worst <= 1e-8 and abs(b0.p_minus - 0.411765) < 5e-7 and abs(b0.p_plus - 0.588235) < 5e-7
    report("4 separability boundary", ok, f"max bisection gap {worst:.2e}, p-={b0.p_minus:.6f}, p+={b0.p_plus:.6f}")


def test_criterion_5_monotonicity(report):
    datasets = {
        "fig4": (figures.fig4_rows()[1], 2, 3, 0),
        "fig6": (figures.fig6_rows()[1], 2, 3, 0),
        "fig8": (figures.fig8_rows()[1], 0, 1, None),
    }
    parts, ok = [], True
    for name, (rows, key, value, group) in datasets.items():
        strict, total, violations = figures.column_is_decreasing(rows, key, value, group, floor=1e-6)
        frac = strict / total if total else 0.0
        ok &= violations == 0 and frac >= 0.95
        parts.append(f"{name} {strict}/{total} strict, {violations} increases")
    report("5 monotonicity", ok, "; ".join(parts))


def test_criterion_6_kimura(report):
    rng = np.random.default_rng(6)
    worst = 0.0
    noiseless = 0.0
    for _ in range(100):
        b0, chi = rng.uniform(0, 1), rng.uniform(0, 2 * math.pi)
        params = random_params(rng)
        noise = NoiseParams(*rng.uniform(0, 1, 2))
        pt = partial_transpose(noisy_output_state(b0, chi, build_internal_unitary(params), noise).matrix)
        worst = max(worst, np.max(np.abs(np.subtract(char_poly_coeffs_from_traces(pt), charpoly_leibniz(pt)))))
        pt0 = partial_transpose(noisy_output_state(b0, chi, build_internal_unitary(params)).matrix)
        a = char_poly_coeffs_from_traces(pt0)
        noiseless = max(noiseless, abs(a[1] - (1 - b0 * b0) / 4))
    xy_zero = UnitaryParams.complete("z", t=0.6)
    a4_zero = measures.kimura_noiseless(B0, xy_zero)[3]
    coeffs_zero = char_poly_coeffs_from_traces(partial_transpose(
        noisy_output_state(B0, 0.3, build_internal_unitary(xy_zero)).matrix))[3]
    a4_nonzero = [
        char_poly_coeffs_from_traces(partial_transpose(
            noisy_output_state(B0, 0.0, build_internal_unitary(UnitaryParams.complete("z", t=0.3, x=x))).matrix))[3]
        for x in (0.1, 0.5, 0.9)
    ]
    ok = (worst <= 1e-10 and noiseless <= 1e-10 and a4_zero == 0 and abs(coeffs_zero) <= 1e-12
          and all(abs(v) > 1e-6 for v in a4_nonzero))
    report("6 Kimura consistency", ok,
           f"trace vs expansion {worst:.2e}, a2 {noiseless:.2e}, a4(x=y=0)={coeffs_zero:.1e}, "
           f"min|a4| otherwise {min(map(abs, a4_nonzero)):.2e}")


def test_criterion_7_fringe_roundtrip(report):
    rng = np.random.default_rng(7)
    vis_err = phase_err = 0.0
    for i in range(100):
        b0 = rng.uniform(0, 1)
        params = random_params(rng)
        noise = NoiseParams(*rng.uniform(0, 1, 2)) if i % 2 else NoiseParams()
        U = build_internal_unitary(params)
        fit = extract_fringe(sample_fringe(lambda c: noisy_output_state(b0, c, U, noise), 16))
        expect = analytic_visibility_phase(params.t, params.z, b0, noise.alpha_q)
        assert math.isclose(expect.visibility, abs(noise.alpha_q) * math.hypot(params.t, b0 * params.z))
        vis_err = max(vis_err, abs(fit.visibility - expect.visibility))
        if expect.visibility > 1e-3:
            phase_err = max(phase_err, abs(math.remainder(fit.phase - expect.phase, 2 * math.pi)))
    ok = vis_err <= 1e-10 and phase_err <= 1e-10
    report("7 fringe round-trip", ok, f"visibility {vis_err:.2e}, phase {phase_err:.2e}")


def test_criterion_8_haar_probe(report):
    ok, parts = True, []
    for c in [(0.8, 0.2), (0.5, 0.3, 0.2), (0.4, 0.3, 0.2, 0.1)]:
        state = puredim.SchmidtState(c)
        probe = puredim.haar_probe(state, samples=100_000)
        mean_z = abs(probe.mean - 1 / state.n) / probe.std_error
        attained = puredim.detection_probabilities(state, puredim.maximizing_unitary(state)[None])[0]
        ok &= (mean_z <= 4 and probe.max <= state.c_max + 1e-12 and state.c_max - probe.max <= 0.02
               and abs(attained - state.c_max) <= 1e-12)
        parts.append(f"n={state.n} mean {mean_z:.2f} SE, max gap {state.c_max - probe.max:.4f}")
    report("8 Haar probe", ok, "; ".join(parts))


def test_criterion_9_structural(report, capsys):
    rng = np.random.default_rng(9)
    herm = tr = psd = 0.0
    max_neg = 0
    states = []
    for _ in range(300):
        params = random_params(rng)
        noise = NoiseParams(*rng.uniform(0, 1, 2))
        states.append(noisy_output_state(rng.uniform(0, 1), rng.uniform(0, 2 * math.pi),
                                         build_internal_unitary(params), noise).matrix)
    for a in np.linspace(-1, 1, 41):
        psi = puredim.pure_output_state(puredim.PureQubitPair.from_a(a), rng.uniform(0, 2 * math.pi))
        states.append(np.outer(psi, psi.conj()))
    for m in states:
        herm = max(herm, np.max(np.abs(m - m.conj().T)))
        tr = max(tr, abs(np.trace(m) - 1))
        psd = min(psd, hermitian_eigenvalues(m)[0])
        max_neg = max(max_neg, count_negative(hermitian_eigenvalues(partial_transpose(m))))
    code = cli.main(["verify"])
    lines = capsys.readouterr().out.strip().splitlines()
    elapsed = time.perf_counter() - _START
    ok = herm <= 1e-10 and tr <= 1e-10 and psd >= -1e-9 and max_neg <= 1 and code == 0 and elapsed < 60
    report("9 structural suite", ok,
           f"{len(states)} states: herm {herm:.1e}, trace {tr:.1e}, min eig {psd:.1e}, "
           f"<= {max_neg} negative PT eig; verify exit {code} ({lines[-1]}); {elapsed:.1f}s elapsed")
