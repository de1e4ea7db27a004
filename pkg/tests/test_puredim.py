import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from complementarity import puredim as pd
from complementarity._validation import ComplementarityError, DomainError
from complementarity.interferometer import output_state
from complementarity.measures import negativity, von_neumann_entropy
from complementarity.numerics import SIGMA_Z, DensityMatrix, partial_trace

STATES = [(0.8, 0.2), (0.5, 0.3, 0.2), (0.4, 0.3, 0.2, 0.1)]


def test_schmidt_state_validation():
    with pytest.raises(DomainError):
        pd.SchmidtState((0.5, 0.6))
    with pytest.raises(DomainError):
        pd.SchmidtState((1.2, -0.2))
    s = pd.SchmidtState((0.3, 0.3, 0.4))
    assert s.n == 3 and s.argmax == 2 and s.c_max == 0.4
    assert pd.SchmidtState((0.5, 0.5)).argmax == 0


def test_schmidt_values():
    assert math.isclose(pd.schmidt_entropy(pd.SchmidtState((0.25, 0.75))), 0.811278, abs_tol=1e-6)
    assert math.isclose(pd.schmidt_entropy(pd.SchmidtState((0.5, 0.3, 0.2))), 1.485475, abs_tol=1e-6)
    assert math.isclose(pd.schmidt_entropy(pd.SchmidtState((0.4, 0.3, 0.2, 0.1))), 1.846439, abs_tol=1e-6)
    assert math.isclose(pd.schmidt_visibility(pd.SchmidtState((0.7, 0.1, 0.1, 0.1))), 0.9)
    assert pd.schmidt_visibility(pd.SchmidtState((0.25,) * 4)) == 0.0


@settings(max_examples=80, deadline=None)
@given(st.floats(0, 1))
def test_pure_complementarity(a):
    pair = pd.PureQubitPair.from_a(a)
    gamma, n, e = pd.pure_complementarity(pair)
    assert abs(gamma ** 2 + n ** 2 - 1) < 1e-12
    assert 0 <= e <= 1


@settings(max_examples=40, deadline=None)
@given(st.floats(0, 1), st.floats(-math.pi, math.pi))
def test_pure_output_state_against_density_route(a, chi):
    pair = pd.PureQubitPair.from_a(a)
    psi = pd.pure_output_state(pair, chi)
    rho = DensityMatrix.from_vector(psi, dims=(2, 2))
    gamma, n, e = pd.pure_complementarity(pair)
    assert abs(negativity(rho) - n) < 1e-9
    assert abs(von_neumann_entropy(partial_trace(rho).matrix) - e) < 1e-9
    prob = pd.path_zero_probability(psi)
    contrast = pair.a ** 2 - pair.b ** 2
    assert abs(contrast) == pytest.approx(gamma)
    assert abs(prob - 0.5 * (1 + contrast * math.cos(chi))) < 1e-12


def test_pure_state_matches_gate_circuit_up_to_local_unitary():
    flip = np.kron(np.eye(2), SIGMA_Z)
    for a in (-0.6, 0.1, 0.8, 1.0):
        pair = pd.PureQubitPair.from_a(a)
        rho0 = np.outer([pair.a, pair.b], [pair.a, pair.b])
        for chi in (0.0, 0.7, 2.0, 5.5):
            psi = flip @ pd.pure_output_state(pair, chi)
            gate = output_state(rho0, chi, SIGMA_Z).matrix
            assert (psi.conj() @ gate @ psi).real == pytest.approx(1.0, abs=1e-12)


def test_entropy_at_balance():
    _, _, e = pd.pure_complementarity(pd.PureQubitPair.from_a(math.sqrt(0.5)))
    assert abs(e - 1) < 1e-12


@pytest.mark.parametrize("c", STATES)
def test_tradeoff_signs(c):
    s = pd.SchmidtState(c)
    for k in range(s.n):
        if k == s.argmax:
            with pytest.raises(ComplementarityError):
                pd.entropy_visibility_tradeoff(s, k, 0.01)
            continue
        d_e, d_g = pd.entropy_visibility_tradeoff(s, k, min(0.01, s.c[k]))
        assert d_e < 0 and d_g > 0


def test_tradeoff_infeasible_step():
    with pytest.raises(DomainError):
        pd.entropy_visibility_tradeoff(pd.SchmidtState((0.8, 0.2)), 1, 0.5)


def test_haar_unitaries_are_unitary():
    u = pd.haar_unitaries(3, 50, np.random.default_rng(0))
    eye = np.eye(3)
    assert np.allclose(u @ np.conj(np.swapaxes(u, 1, 2)), eye)


def test_haar_first_row_moments():
    # |U_00|^2 is Beta(1, n-1) distributed with mean 1/n and variance (n-1)/(n^2 (n+1))
    u = pd.haar_unitaries(4, 40000, np.random.default_rng(7))
    w = np.abs(u[:, 0, 0]) ** 2
    assert abs(w.mean() - 0.25) < 0.005
    assert abs(w.var() - 3 / (16 * 5)) < 0.003


@pytest.mark.parametrize("c", STATES)
def test_maximizer(c):
    s = pd.SchmidtState(c)
    p = pd.detection_probabilities(s, pd.maximizing_unitary(s)[None])[0]
    assert abs(p - s.c_max) < 1e-12


def test_haar_probe_reproducible_and_bounded():
    s = pd.SchmidtState((0.5, 0.3, 0.2))
    a, b = pd.haar_probe(s, 5000, seed=1), pd.haar_probe(s, 5000, seed=1)
    assert a == b
    assert a.max <= s.c_max + 1e-12
    assert abs(a.mean - 1 / 3) < 4 * a.std_error
    with pytest.raises(ComplementarityError):
        pd.haar_probe(s, 10)
