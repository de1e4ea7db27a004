"""Row generators for the fringe and negativity/entropy datasets.

Each generator returns ``(header, rows)``; ``None`` in a row marks a
physically inaccessible grid cell (no unitary with those components).
"""
from __future__ import annotations

import itertools

import numpy as np

from ._validation import CONSTRAINT_TOL, DomainError, check_in_range
from .channels import NoiseParams, noisy_output_state
from .interferometer import (
    UnitaryParams,
    analytic_visibility_phase,
    build_internal_unitary,
    detection_probability,
    fringe_grid,
)
from .measures import entropy_from_visibility, negativity

UNITARY_NAMES = ("t", "x", "y", "z")


def grid(lo, hi, steps):
    if steps < 2:
        raise DomainError(f"a grid needs at least 2 steps, got {steps}")
    return np.linspace(lo, hi, int(steps))


def try_unitary(solve_for="y", **components):
    """``UnitaryParams`` with ``solve_for`` completed, or ``None`` if inaccessible."""
    given = {k: float(components.get(k, 0.0)) for k in UNITARY_NAMES if k != solve_for}
    if 1.0 - sum(v * v for v in given.values()) < -CONSTRAINT_TOL:
        return None
    return UnitaryParams.complete(solve_for, **given)


def model_point(b0, chi, params, noise):
    """``(Gamma, gamma_g, N, P)`` at one parameter point."""
    fit = analytic_visibility_phase(params.t, params.z, b0, noise.alpha_q)
    rho = noisy_output_state(b0, chi, build_internal_unitary(params), noise)
    return fit.visibility, fit.phase, negativity(rho), detection_probability(rho)


def fringe_rows(b0, params, noise=NoiseParams(), samples=16):
    if samples < 3:
        raise DomainError(f"a fringe needs at least 3 samples per period, got {samples}")
    U = build_internal_unitary(params)
    rows = [
        (float(chi), detection_probability(noisy_output_state(b0, chi, U, noise)))
        for chi in fringe_grid(samples)
    ]
    return ("chi", "P"), rows


def fig4_rows(b0=0.7, steps=101):
    """Noiseless negativity over ``(t, z)``; ``x`` absorbs the remaining norm and ``y = 0``."""
    check_in_range(b0, 0.0, 1.0, "b0")
    return _tz_rows(b0, steps, NoiseParams(), fixed={"y": 0.0}, solve_for="x")


def fig6_rows(b0=0.7, x=0.4, p=0.4, q=0.0, steps=101):
    """Negativity with channel noise over ``(t, z)`` at fixed ``x``; ``y`` is solved."""
    check_in_range(b0, 0.0, 1.0, "b0")
    return _tz_rows(b0, steps, NoiseParams(p, q), fixed={"x": x}, solve_for="y")


def _tz_rows(b0, steps, noise, fixed, solve_for, chi=0.0):
    rows = []
    for t in grid(0.0, 1.0, steps):
        for z in grid(0.0, 1.0, steps):
            params = try_unitary(solve_for, t=t, z=z, **fixed)
            if params is None:
                rows.append((float(t), float(z), None, None))
                continue
            gamma, _, n, _ = model_point(b0, chi, params, noise)
            rows.append((float(t), float(z), gamma, n))
    return ("t", "z", "Gamma", "N"), rows


def fig8_rows(steps=101):
    return ("Gamma", "S"), [(float(g), entropy_from_visibility(g)) for g in grid(0.0, 1.0, steps)]


def sweep_rows(fixed, swept, solve_for="y"):
    """Full-factorial sweep.

    ``fixed`` maps parameter names (``b0, chi, t, x, y, z, p, q``) to values;
    ``swept`` maps names to ``(lo, hi, steps)``. The ``solve_for`` unitary
    component is derived from the others.
    """
    names = list(swept)
    axes = [grid(*swept[k]) for k in names]
    header = ("b0", "chi", "t", "x", "y", "z", "p", "q", "Gamma", "phase", "N", "P")
    rows = []
    for combo in itertools.product(*axes):
        point = dict(fixed)
        point.update({k: float(v) for k, v in zip(names, combo)})
        params = try_unitary(solve_for, **{k: point.get(k, 0.0) for k in UNITARY_NAMES})
        base = [point["b0"], point["chi"]]
        if params is None:
            rows.append(tuple(base + [point.get(k) if k != solve_for else None for k in UNITARY_NAMES]
                              + [point["p"], point["q"], None, None, None, None]))
            continue
        noise = NoiseParams(point["p"], point["q"])
        rows.append(tuple(base + list(params.as_tuple()) + [noise.p, noise.q]
                          + list(model_point(point["b0"], point["chi"], params, noise))))
    return header, rows


def column_is_decreasing(rows, key_index, value_index, group_index=None, floor=1e-6):
    """Count ``(strict, total, violations)`` of decreases along ``key`` within each group.

    Only steps whose starting value exceeds ``floor`` are counted.
    """
    groups = {}
    for r in rows:
        if r[value_index] is None or r[key_index] is None:
            continue
        g = r[group_index] if group_index is not None else None
        groups.setdefault(g, []).append((r[key_index], r[value_index]))
    strict = total = violations = 0
    for pts in groups.values():
        pts.sort()
        for (k0, v0), (k1, v1) in zip(pts, pts[1:]):
            if v0 <= floor or k1 == k0:
                continue
            total += 1
            if v1 < v0:
                strict += 1
            elif v1 > v0:
                violations += 1
    return strict, total, violations


def format_value(v):
    return "" if v is None else format(float(v), ".12g")

