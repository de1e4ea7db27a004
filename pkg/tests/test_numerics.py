import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from complementarity import numerics as nm
from complementarity._validation import ComplementarityError, DimensionError
from complementarity.oracles import charpoly_leibniz


def random_density(rng, n=4, rank=None):
    rank = rank or n
    a = rng.standard_normal((n, rank)) + 1j * rng.standard_normal((n, rank))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def random_hermitian(rng, n):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (a + a.conj().T) / 2


BELL = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)


def test_pauli_algebra():
    for s in (nm.SIGMA_X, nm.SIGMA_Y, nm.SIGMA_Z):
        assert np.allclose(s @ s, nm.I2)
    assert np.allclose(nm.SIGMA_X @ nm.SIGMA_Y, 1j * nm.SIGMA_Z)


def test_kron_matches_numpy():
    rng = np.random.default_rng(0)
    a, b, c = (rng.standard_normal((2, 2)) for _ in range(3))
    assert np.allclose(nm.kron(a, b, c), np.kron(np.kron(a, b), c))


def test_algebra_helpers():
    a = np.array([[1, 2j], [0, 3]])
    assert np.allclose(nm.dagger(a), a.conj().T)
    assert nm.trace(a) == 4
    assert np.allclose(nm.multiply(a, a, a), a @ a @ a)
    assert np.allclose(nm.add(a, a), 2 * a)
    assert np.allclose(nm.scale(0.5j, a), 0.5j * a)
    with pytest.raises(ComplementarityError):
        nm.add(a, np.eye(3))


def test_density_matrix_validation():
    rho = nm.DensityMatrix.from_vector(BELL)
    assert rho.dim == 4
    rho.validate()
    with pytest.raises(ComplementarityError):
        nm.DensityMatrix(np.diag([1.5, -0.5]), (2,)).validate()


def test_partial_transpose_bell_spectrum():
    rho = np.outer(BELL, BELL.conj())
    lam = nm.hermitian_eigenvalues(nm.partial_transpose(rho))
    assert np.allclose(lam, [-0.5, 0.5, 0.5, 0.5], atol=1e-12)
    assert nm.count_negative(lam) == 1


def test_partial_transpose_product_state_is_transpose():
    rng = np.random.default_rng(1)
    a, b = random_density(rng, 2), random_density(rng, 2)
    assert np.allclose(nm.partial_transpose(np.kron(a, b)), np.kron(a, b.T))
    assert np.allclose(nm.partial_transpose(np.kron(a, b), subsystem=0), np.kron(a.T, b))


def test_partial_trace():
    rng = np.random.default_rng(2)
    a, b = random_density(rng, 2), random_density(rng, 3)
    rho = np.kron(a, b)
    assert np.allclose(nm.partial_trace(rho, 1, dims=(2, 3)).matrix, a)
    assert np.allclose(nm.partial_trace(rho, 0, dims=(2, 3)).matrix, b)


def test_dimension_errors():
    with pytest.raises(DimensionError):
        nm.partial_transpose(np.eye(3))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6, 8])
def test_jacobi_matches_lapack(n):
    rng = np.random.default_rng(n)
    for _ in range(20):
        m = random_hermitian(rng, n)
        ours = nm.hermitian_eigenvalues(m)
        assert np.all(np.diff(ours) >= 0)
        assert np.allclose(ours, np.linalg.eigvalsh(m), atol=1e-10)


def test_jacobi_degenerate_and_diagonal():
    assert np.allclose(nm.hermitian_eigenvalues(np.eye(4) / 4), [0.25] * 4)
    assert np.allclose(nm.hermitian_eigenvalues(np.diag([3.0, -1.0, 2.0])), [-1, 2, 3])


def test_jacobi_rejects_non_hermitian():
    with pytest.raises(ComplementarityError):
        nm.hermitian_eigenvalues(np.array([[0, 1], [0, 0]]))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_charpoly_from_traces_matches_permutation_expansion(seed):
    rho = random_density(np.random.default_rng(seed))
    pt = nm.partial_transpose(rho)
    ours = nm.char_poly_coeffs_from_traces(pt)
    assert np.allclose(ours, charpoly_leibniz(pt), atol=1e-10)
    lam = np.linalg.eigvalsh(pt)
    for l in lam:
        assert abs(nm.char_poly_eval(ours, l)) < 1e-10


def test_charpoly_maximally_mixed():
    assert np.allclose(nm.char_poly_coeffs_from_traces(np.eye(4) / 4), [1, 3 / 8, 1 / 16, 1 / 256])


def test_charpoly_leibniz_matches_numpy_poly():
    rng = np.random.default_rng(5)
    m = random_hermitian(rng, 4)
    coeffs = np.poly(np.linalg.eigvalsh(m)).real
    expected = [(-1) ** k * coeffs[k] for k in range(1, 5)]
    assert np.allclose(charpoly_leibniz(m), expected)


def test_power_traces():
    m = np.diag([1.0, 2.0, 3.0])
    assert np.allclose(nm.power_traces(m, 3), [6, 14, 36])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([(2, 2), (2, 3), (3, 2)]))
def test_partial_transpose_is_involution_and_trace_preserving(seed, dims):
    rng = np.random.default_rng(seed)
    rho = random_density(rng, dims[0] * dims[1])
    pt = nm.partial_transpose(rho, dims=dims)
    assert np.allclose(nm.partial_transpose(pt, dims=dims), rho)
    assert abs(np.trace(pt) - 1) < 1e-12
    assert np.allclose(pt, pt.conj().T)
