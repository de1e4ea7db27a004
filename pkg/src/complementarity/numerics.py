"""Dense complex matrix algebra for small bipartite systems.

Matrices are plain ``numpy`` arrays of dtype ``complex``. Bipartite operators
use the ordering ``path (x) internal``: subsystem 0 is the leftmost Kronecker
factor and the flattened index is ``i_path * d_int + i_int``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from math import factorial

import numpy as np

from ._validation import (
    SPECTRAL_TOL,
    STRUCTURAL_TOL,
    ComplementarityError,
    ConvergenceError,
    DimensionError,
    as_square,
    check_hermitian,
)

MAX_DIM = 64
JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)


@dataclass(frozen=True)
class DensityMatrix:
    """A validated density operator together with its subsystem dimensions."""

    matrix: np.ndarray
    dims: tuple = None

    def __post_init__(self):
        m = as_square(self.matrix, "density matrix")
        if m.shape[0] > MAX_DIM:
            raise DimensionError(f"dimension {m.shape[0]} exceeds {MAX_DIM}")
        dims = (m.shape[0],) if self.dims is None else tuple(int(d) for d in self.dims)
        if int(np.prod(dims)) != m.shape[0]:
            raise DimensionError(
                f"subsystem dims {dims} do not multiply to matrix dimension {m.shape[0]}"
            )
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self):
        return self.matrix.shape[0]

    def validate(self, tol=STRUCTURAL_TOL, spectral_tol=SPECTRAL_TOL):
        """Raise unless the matrix is Hermitian, unit-trace and PSD."""
        check_hermitian(self.matrix, tol, "density matrix")
        tr = np.trace(self.matrix)
        if abs(tr - 1) > tol:
            raise ComplementarityError(f"density matrix trace is {tr.real:.12g}, expected 1")
        lam_min = hermitian_eigenvalues(self.matrix)[0]
        if lam_min < -spectral_tol:
            raise ComplementarityError(f"density matrix is not PSD (min eigenvalue {lam_min:.3e})")
        return self

    @classmethod
    def from_vector(cls, psi, dims=None):
        v = np.asarray(psi, dtype=complex).ravel()
        return cls(np.outer(v, v.conj()), dims)


# --- elementary algebra -------------------------------------------------------

def _check_same_shape(a, b, op):
    if a.shape != b.shape:
        raise DimensionError(f"{op}: operand dimensions {a.shape[0]} and {b.shape[0]} differ")


def kron(*ms):
    out = as_square(ms[0])
    for m in ms[1:]:
        out = np.kron(out, as_square(m))
    return out


def dagger(m):
    return as_square(m).conj().T


def trace(m):
    return complex(np.trace(as_square(m)))


def multiply(*ms):
    out = as_square(ms[0])
    for m in ms[1:]:
        b = as_square(m)
        _check_same_shape(out, b, "multiply")
        out = out @ b
    return out


def add(a, b):
    a, b = as_square(a), as_square(b)
    _check_same_shape(a, b, "add")
    return a + b


def scale(c, m):
    return complex(c) * as_square(m)


_PRIMITIVES = {
    "kron": kron,
    "dagger": dagger,
    "trace": trace,
    "multiply": multiply,
    "add": add,
    "scale": scale,
}


def matrix_algebra(primitive, *operands):
    """Dispatch to one of ``kron``, ``dagger``, ``trace``, ``multiply``, ``add``, ``scale``."""
    try:
        fn = _PRIMITIVES[primitive]
    except KeyError:
        raise ComplementarityError(f"unknown primitive {primitive!r}") from None
    return fn(*operands)


# --- bipartite operations -----------------------------------------------------

def _bipartite(rho, dims):
    if isinstance(rho, DensityMatrix):
        m, dims = rho.matrix, rho.dims if dims is None else tuple(dims)
    else:
        m = as_square(rho)
        if dims is None:
            d = int(round(np.sqrt(m.shape[0])))
            dims = (d, d)
    dims = tuple(int(d) for d in dims)
    if len(dims) != 2:
        raise DimensionError(f"expected a bipartite operator, got subsystem dims {dims}")
    if dims[0] * dims[1] != m.shape[0]:
        raise DimensionError(f"dims {dims} do not match matrix dimension {m.shape[0]}")
    return m, dims


def partial_transpose(rho, subsystem=1, dims=None):
    """Transpose the ``subsystem`` tensor factor of a bipartite operator."""
    m, (da, db) = _bipartite(rho, dims)
    if subsystem not in (0, 1):
        raise DimensionError(f"subsystem must be 0 or 1, got {subsystem}")
    t = m.reshape(da, db, da, db)
    t = t.transpose(2, 1, 0, 3) if subsystem == 0 else t.transpose(0, 3, 2, 1)
    return t.reshape(da * db, da * db)


def partial_trace(rho, traced_subsystem=1, dims=None):
    """Trace out one factor of a bipartite state, returning the other marginal."""
    m, (da, db) = _bipartite(rho, dims)
    t = m.reshape(da, db, da, db)
    if traced_subsystem == 1:
        red, d = np.einsum("ijkj->ik", t), da
    elif traced_subsystem == 0:
        red, d = np.einsum("ijil->jl", t), db
    else:
        raise DimensionError(f"traced_subsystem must be 0 or 1, got {traced_subsystem}")
    return DensityMatrix(red, (d,))


# --- spectra ------------------------------------------------------------------

def _off_norm(a):
    n = len(a)
    return math.sqrt(sum(abs(a[i][j]) ** 2 for i in range(n) for j in range(n) if i != j))


def hermitian_eigenvalues(m, tol=STRUCTURAL_TOL, jacobi_tol=JACOBI_TOL,
                          max_sweeps=JACOBI_MAX_SWEEPS):
    """Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.

    Each rotation first removes the phase of the pivot ``a[p, q]`` with a
    diagonal unitary and then applies the classic real symmetric Jacobi
    rotation, so ``a[p, q]`` is annihilated exactly. Sweeps stop once the
    off-diagonal Frobenius norm falls below ``jacobi_tol * ||m||_F``.

    Returns the eigenvalues as a real array sorted ascending.
    """
    if isinstance(m, DensityMatrix):
        m = m.matrix
    h = check_hermitian(m, tol)
    n = h.shape[0]
    if n > MAX_DIM:
        raise DimensionError(f"dimension {n} exceeds {MAX_DIM}")
    # plain Python scalars: much faster than numpy slicing at these sizes
    a = (0.5 * (h + h.conj().T)).tolist()
    threshold = jacobi_tol * math.sqrt(sum(abs(v) ** 2 for row in a for v in row))
    for _ in range(max_sweeps):
        if _off_norm(a) <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p][q]
                mag = abs(apq)
                if mag <= 1e-300:
                    continue
                phase = (apq / mag).conjugate()
                theta = (a[q][q].real - a[p][p].real) / (2.0 * mag)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # G = [[c, s], [-s conj(phase), c conj(phase)]] on columns (p, q); a <- G^H a G
                g_qp, g_qq = -s * phase, c * phase
                for row in a:
                    u, v = row[p], row[q]
                    row[p] = c * u + g_qp * v
                    row[q] = s * u + g_qq * v
                h_qp, h_qq = g_qp.conjugate(), g_qq.conjugate()
                row_p, row_q = a[p], a[q]
                for k in range(n):
                    u, v = row_p[k], row_q[k]
                    row_p[k] = c * u + h_qp * v
                    row_q[k] = s * u + h_qq * v
                a[p][q] = a[q][p] = 0j
    else:
        residual = _off_norm(a)
        if residual > threshold:
            raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps", residual)
    return np.sort(np.array([a[i][i].real for i in range(n)]))


def count_negative(eigenvalues, tol=SPECTRAL_TOL):
    return int(np.sum(np.asarray(eigenvalues) < -tol))


def power_traces(m, kmax):
    """``[Tr m, Tr m^2, ..., Tr m^kmax]``."""
    a = as_square(m)
    out, p = [], np.eye(a.shape[0], dtype=complex)
    for _ in range(kmax):
        p = p @ a
        out.append(np.trace(p).real)
    return out


def char_poly_coeffs_from_traces(rho_pt):
    """Coefficients ``(a1, a2, a3, a4)`` of ``det(m - x) = x^4 - a1 x^3 + a2 x^2 - a3 x + a4``.

    ``a_k`` is the k-th elementary symmetric function of the spectrum,
    obtained from the power traces by Newton's identities.
    """
    m = check_hermitian(rho_pt)
    if m.shape != (4, 4):
        raise DimensionError(f"expected a 4x4 matrix, got dimension {m.shape[0]}")
    p1, p2, p3, p4 = power_traces(m, 4)
    a1 = p1
    a2 = (p1 ** 2 - p2) / factorial(2)
    a3 = (p1 ** 3 - 3 * p1 * p2 + 2 * p3) / factorial(3)
    a4 = (p1 ** 4 - 6 * p1 ** 2 * p2 + 3 * p2 ** 2 + 8 * p1 * p3 - 6 * p4) / factorial(4)
    return a1, a2, a3, a4


def char_poly_eval(coeffs, lam):
    """Evaluate ``x^4 - a1 x^3 + a2 x^2 - a3 x + a4`` at ``lam``."""
    a1, a2, a3, a4 = coeffs
    return lam ** 4 - a1 * lam ** 3 + a2 * lam ** 2 - a3 * lam + a4
