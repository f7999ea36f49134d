"""L2-optimal degree reduction and knot removal for spline curves.

Every approximation is a projection: the optimal control point ``i`` of the
target space is the inner product of the curve with dual function ``i`` of
that space. Inner products between the source curve and target basis are
integrated exactly with Gauss-Legendre nodes on the merged breakpoints.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .dual_bspline import DualBasisMatrix, build_dual
from .dual_power import build_dual_truncated, dual_truncated_eval, truncated_basis_eval
from .quadrature import composite_rule, nodes_for_degree
from .spline_core import (
    KnotVector,
    SplineCurve,
    collocation_matrix,
    curve_eval,
    refine_curve,
)

#: Grid size ``M`` of the default max-error grid ``{0, 1/M, ..., 1}``.
GRID_SIZE = 500


@dataclass(frozen=True)
class ApproxReport:
    e2: float
    einf: float
    source_dim: int
    target_dim: int
    elapsed: float  # seconds


@lru_cache(maxsize=128)
def dual_basis(kv: KnotVector) -> DualBasisMatrix:
    """Cached :func:`~dualspline.dual_bspline.build_dual`."""
    return build_dual(kv)


def _merged_breaks(*kvs: KnotVector) -> np.ndarray:
    return np.unique(np.concatenate([kv.breakpoints for kv in kvs]))


def project_curve(c: SplineCurve, target_kv: KnotVector) -> SplineCurve:
    """Best L2 approximation of ``c`` in the spline space over ``target_kv``."""
    npts = nodes_for_degree(c.degree + target_kv.degree)
    x, w = composite_rule(_merged_breaks(c.kv, target_kv), npts)
    moments = collocation_matrix(target_kv, x).T @ (w[:, None] * curve_eval(c, x))
    return SplineCurve(target_kv, dual_basis(target_kv).Dmat @ moments)


def l2_error(a: SplineCurve, b: SplineCurve) -> float:
    """``sqrt(int_0^1 |a(t) - b(t)|^2 dt)``, integrated exactly."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    npts = max(a.degree, b.degree) + 1
    x, w = composite_rule(_merged_breaks(a.kv, b.kv), npts)
    diff = curve_eval(a, x) - curve_eval(b, x)
    return float(np.sqrt(np.sum(w * np.sum(diff * diff, axis=1))))


def linf_error(a: SplineCurve, b: SplineCurve, M: int = GRID_SIZE) -> float:
    """Largest Euclidean distance over the grid ``{0, 1/M, ..., 1}``."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    grid = np.linspace(0.0, 1.0, M + 1)
    return float(np.max(np.linalg.norm(curve_eval(a, grid) - curve_eval(b, grid), axis=1)))


def _run(c: SplineCurve, target: KnotVector) -> tuple[SplineCurve, ApproxReport]:
    start = time.perf_counter()
    result = project_curve(c, target)
    elapsed = time.perf_counter() - start
    report = ApproxReport(
        e2=l2_error(c, result),
        einf=linf_error(c, result),
        source_dim=c.kv.dim,
        target_dim=target.dim,
        elapsed=elapsed,
    )
    return result, report


def _check_sub_knots(keep: KnotVector, source: KnotVector):
    for pos, mult in keep.interior:
        if source.multiplicity(pos) < mult:
            raise ValueError(f"knot {pos!r} (multiplicity {mult}) is not in the source knot vector")


def degree_reduce(c: SplineCurve, n_star: int) -> tuple[SplineCurve, ApproxReport]:
    """Optimal degree ``n_star`` curve over the same interior knots."""
    if not 0 <= n_star < c.degree:
        raise ValueError(f"target degree must be in 0..{c.degree - 1}, got {n_star}")
    return _run(c, c.kv.with_degree(n_star))


def remove_knots(c: SplineCurve, keep: KnotVector) -> tuple[SplineCurve, ApproxReport]:
    """Optimal curve of the same degree over the coarser knot vector ``keep``."""
    if keep.degree != c.degree:
        raise ValueError(f"degree mismatch: {keep.degree} vs {c.degree}")
    _check_sub_knots(keep, c.kv)
    return _run(c, keep)


def reduce_and_remove(
    c: SplineCurve, n_star: int, keep: KnotVector
) -> tuple[SplineCurve, ApproxReport]:
    """Degree reduction and knot removal in a single projection."""
    if not 0 <= n_star <= c.degree:
        raise ValueError(f"target degree must be in 0..{c.degree}, got {n_star}")
    _check_sub_knots(keep, c.kv)
    return _run(c, keep.with_degree(n_star))


def to_truncated_power(c: SplineCurve) -> np.ndarray:
    """Coefficients of ``c`` in ``1, t, ..., t^n, (t - t_1)_+^n, ...``.

    Returns an array of shape ``(n + m + 1, d)``. Only simple interior knots
    are supported. The truncated power basis is badly conditioned, so expect
    accuracy to degrade quickly with degree and knot count.
    """
    if not c.kv.simple:
        raise ValueError("conversion to truncated powers requires simple interior knots")
    knots = [p for p, _ in c.kv.interior]
    state = build_dual_truncated(c.degree, knots)
    x, w = composite_rule(c.kv.breakpoints, c.degree + 1)
    duals = np.column_stack([dual_truncated_eval(state, j, x) for j in range(state.size)])
    return duals.T @ (w[:, None] * curve_eval(c, x))


def truncated_power_eval_curve(coeffs, degree: int, knots, t) -> np.ndarray:
    """Evaluate a truncated-power representation at points ``t``."""
    return truncated_basis_eval(degree, knots, t) @ np.asarray(coeffs, dtype=float)


def elevate_degree(c: SplineCurve, times: int = 1) -> SplineCurve:
    """Exact degree elevation through Bezier segments.

    Interior knots end up with multiplicity equal to the new degree, so the
    result spans a larger space than strictly needed; it is meant for
    verification, not for production geometry.
    """
    if c.degree < 1:
        raise ValueError("degree elevation needs degree >= 1")
    for _ in range(times):
        n = c.degree
        bezier_kv = KnotVector(n, tuple((p, n) for p, _ in c.kv.interior))
        pts = refine_curve(c, bezier_kv).control_points
        segments = len(c.kv.interior) + 1
        out = [pts[0]]
        for s in range(segments):
            seg = pts[s * n:s * n + n + 1]
            for i in range(1, n + 2):
                a = i / (n + 1)
                q = a * seg[i - 1] + (1 - a) * seg[i] if i <= n else seg[n]
                out.append(q)
        elevated_kv = KnotVector(n + 1, tuple((p, n + 1) for p, _ in c.kv.interior))
        c = SplineCurve(elevated_kv, np.array(out))
    return c
