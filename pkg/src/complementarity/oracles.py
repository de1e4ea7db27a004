"""Brute-force reference computations kept independent of the production paths."""
from __future__ import annotations

import itertools

import numpy as np


def _perm_sign(perm):
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def charpoly_leibniz(m):
    """Coefficients ``(a1, ..., an)`` of ``det(m - x I) = sum (-1)^{n-k} ... `` by permutation expansion.

    Every entry of ``m - x I`` is a degree-1 polynomial in ``x``; the
    determinant is summed over all ``n!`` permutations. The result is
    normalised to the monic form ``x^n - a1 x^{n-1} + a2 x^{n-2} - ...``.
    """
    a = np.asarray(m, dtype=complex)
    n = a.shape[0]
    total = np.zeros(n + 1, dtype=complex)  # highest power first
    for perm in itertools.permutations(range(n)):
        poly = np.array([1.0 + 0j])
        for i, j in enumerate(perm):
            entry = np.array([-1.0, a[i, i]]) if i == j else np.array([a[i, j]])
            poly = np.polymul(poly, entry)
        padded = np.zeros(n + 1, dtype=complex)
        padded[n + 1 - poly.size:] = poly
        total += _perm_sign(perm) * padded
    monic = total / total[0]
    return tuple(((-1) ** k * monic[k]).real for k in range(1, n + 1))


def det_at(m, lam):
    a = np.asarray(m, dtype=complex)
    return complex(np.linalg.det(a - lam * np.eye(a.shape[0])))


def bisect_sign_change(f, lo, hi, tol=1e-10, max_iter=200):
    """Root of ``f`` on ``[lo, hi]`` by bisection; ``f(lo)`` and ``f(hi)`` must differ in sign."""
    flo, fhi = f(lo), f(hi)
    if (flo < 0) == (fhi < 0):
        raise ValueError(f"no sign change on [{lo}, {hi}]: f={flo}, {fhi}")
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)
