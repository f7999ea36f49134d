"""Knot vectors, B-spline evaluation, knot refinement and polar-form helpers.

Knots follow the clamped convention on [0, 1]: a degree ``n`` knot vector with
interior knots ``t_1 <= ... <= t_m`` has the full sequence
``t_{-n} = ... = t_0 = 0 < t_1 ... t_m < t_{m+1} = ... = t_{n+m+1} = 1``.
``full[s + n]`` stores ``t_s``. Basis function ``i`` (``0 <= i <= n + m``) is
the B-spline with knots ``t_{-n+i}, ..., t_{i+1}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

import numpy as np

from . import _backend


@dataclass(frozen=True)
class KnotVector:
    """Clamped knot vector on [0, 1].

    Parameters
    ----------
    degree : int
    interior : tuple of (position, multiplicity)
        Distinct interior positions in increasing order.
    """

    degree: int
    interior: tuple[tuple[float, int], ...] = ()

    def __post_init__(self):
        if int(self.degree) != self.degree or self.degree < 0:
            raise ValueError(f"degree must be a non-negative integer, got {self.degree!r}")
        object.__setattr__(self, "degree", int(self.degree))
        cleaned = tuple((float(p), int(mult)) for p, mult in self.interior)
        object.__setattr__(self, "interior", cleaned)
        # degree 0 splines are piecewise constants: simple knots are allowed there
        max_mult = max(self.degree, 1)
        prev = 0.0
        for pos, mult in cleaned:
            if not 0.0 < pos < 1.0:
                raise ValueError(f"interior knot {pos!r} outside the open interval (0, 1)")
            if pos <= prev:
                raise ValueError("interior knot positions must be strictly increasing")
            if mult < 1:
                raise ValueError(f"multiplicity of knot {pos!r} must be positive")
            if mult > max_mult:
                raise ValueError(
                    f"multiplicity {mult} of knot {pos!r} exceeds degree {self.degree}"
                )
            prev = pos

    @classmethod
    def from_knots(cls, degree: int, knots: Iterable[float]) -> KnotVector:
        """Build from a flat, non-decreasing list of interior knots."""
        grouped: list[list] = []
        for t in knots:
            t = float(t)
            if grouped and grouped[-1][0] == t:
                grouped[-1][1] += 1
            elif grouped and t < grouped[-1][0]:
                raise ValueError("interior knots must be non-decreasing")
            else:
                grouped.append([t, 1])
        return cls(degree, tuple((p, m) for p, m in grouped))

    @cached_property
    def interior_flat(self) -> np.ndarray:
        flat = [p for p, mult in self.interior for _ in range(mult)]
        arr = np.array(flat, dtype=float)
        arr.setflags(write=False)
        return arr

    @property
    def m(self) -> int:
        """Number of interior knots counted with multiplicity."""
        return int(sum(mult for _, mult in self.interior))

    @property
    def dim(self) -> int:
        """Dimension ``n + m + 1`` of the spline space."""
        return self.degree + self.m + 1

    @cached_property
    def full(self) -> np.ndarray:
        n = self.degree
        arr = np.concatenate([np.zeros(n + 1), self.interior_flat, np.ones(n + 1)])
        arr.setflags(write=False)
        return arr

    @cached_property
    def breakpoints(self) -> np.ndarray:
        """Distinct knot values including 0 and 1."""
        arr = np.array([0.0] + [p for p, _ in self.interior] + [1.0])
        arr.setflags(write=False)
        return arr

    def knot(self, s: int) -> float:
        """Knot ``t_s`` in the signed indexing used throughout the package."""
        if s <= 0:
            return 0.0
        if s > self.m:
            return 1.0
        return float(self.interior_flat[s - 1])

    def with_degree(self, degree: int) -> KnotVector:
        """Same interior knots, different degree (clamping follows the degree)."""
        return KnotVector(degree, self.interior)

    def prefix(self, k: int) -> KnotVector:
        """Knot vector ``T_k`` keeping only the first ``k`` interior knots."""
        if not 0 <= k <= self.m:
            raise ValueError(f"prefix length {k} outside 0..{self.m}")
        return KnotVector.from_knots(self.degree, self.interior_flat[:k])

    def multiplicity(self, pos: float) -> int:
        if pos == 0.0 or pos == 1.0:
            return self.degree + 1
        for p, mult in self.interior:
            if p == pos:
                return mult
        return 0

    def is_subset_of(self, other: KnotVector) -> bool:
        """True if every interior knot appears in ``other`` at least as often."""
        return all(other.multiplicity(p) >= mult for p, mult in self.interior)

    @property
    def simple(self) -> bool:
        return all(mult == 1 for _, mult in self.interior)


def make_knot_vector(degree: int, interior: Sequence[tuple[float, int]] = ()) -> KnotVector:
    """Validated clamped knot vector from ``(position, multiplicity)`` pairs."""
    return KnotVector(degree, tuple(interior))


@dataclass(frozen=True)
class Spline:
    """Scalar spline ``sum_i coeffs[i] N_i`` over ``kv``."""

    kv: KnotVector
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float)
        if c.shape != (self.kv.dim,):
            raise ValueError(f"expected {self.kv.dim} coefficients, got shape {c.shape}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    def __call__(self, t):
        return spline_eval(self.kv, self.coeffs, t)


@dataclass(frozen=True)
class SplineCurve:
    """Spline curve in R^d with control points stored row-wise."""

    kv: KnotVector
    control_points: np.ndarray = field(repr=False)

    def __post_init__(self):
        pts = np.array(self.control_points, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] != self.kv.dim:
            raise ValueError(
                f"expected {self.kv.dim} control points, got array of shape {pts.shape}"
            )
        if pts.shape[1] < 1:
            raise ValueError("control points must have dimension >= 1")
        pts.setflags(write=False)
        object.__setattr__(self, "control_points", pts)

    @property
    def dim(self) -> int:
        return self.control_points.shape[1]

    @property
    def degree(self) -> int:
        return self.kv.degree

    def __call__(self, t):
        return curve_eval(self, t)


def _check_param(t):
    arr = np.asarray(t, dtype=float)
    if np.any(arr < 0.0) or np.any(arr > 1.0) or np.any(np.isnan(arr)):
        raise ValueError("parameter outside [0, 1]")
    return arr


def collocation_matrix(kv: KnotVector, t) -> np.ndarray:
    """Dense matrix ``M[p, i] = N_i(t_p)``; evaluation at 1 is a left limit."""
    t = np.atleast_1d(_check_param(t))
    spans, values = _backend.basis_nonzero(kv.full, kv.degree, t.ravel())
    mat = np.zeros((t.size, kv.dim))
    rows = np.arange(t.size)[:, None]
    cols = spans[:, None] - kv.degree + np.arange(kv.degree + 1)[None, :]
    mat[rows, cols] = values
    return mat


def basis_eval_all(kv: KnotVector, t: float) -> np.ndarray:
    """Values of all ``n + m + 1`` B-splines at a single parameter."""
    _check_param(t)
    if np.ndim(t) != 0:
        raise ValueError("basis_eval_all expects a scalar parameter")
    return collocation_matrix(kv, [t])[0]


def spline_eval(kv: KnotVector, coeffs, t):
    """Evaluate ``sum_i coeffs[i] N_i(t)``; coefficients may carry trailing axes."""
    t_arr = _check_param(t)
    flat = np.atleast_1d(t_arr).ravel()
    spans, values = _backend.basis_nonzero(kv.full, kv.degree, flat)
    coeffs = np.asarray(coeffs, dtype=float)
    idx = spans[:, None] - kv.degree + np.arange(kv.degree + 1)[None, :]
    out = np.einsum("pr,pr...->p...", values, coeffs[idx])
    if t_arr.ndim == 0:
        return out[0]
    return out.reshape(t_arr.shape + coeffs.shape[1:])


def curve_eval(curve: SplineCurve, t):
    """Point(s) on the curve; shape ``(d,)`` for scalar ``t``, else ``(P, d)``."""
    return spline_eval(curve.kv, curve.control_points, t)


def truncated_power_eval(x, knot: float, p: int):
    """``(x - knot)_+^p``; zero for ``x <= knot`` (also when ``p == 0``)."""
    if p < 0:
        raise ValueError("power must be non-negative")
    x = np.asarray(x, dtype=float)
    out = np.where(x > knot, np.power(np.maximum(x - knot, 0.0), p), 0.0)
    return out[()] if out.ndim == 0 else out


def monic_from_roots(roots: Sequence[float]) -> list[float]:
    """Coefficients ``w_0..w_{n-1}`` with ``t^n + sum w_i t^i = prod (t - r)``.

    Builds the product one linear factor at a time (O(n^2)).
    """
    # poly[i] is the coefficient of t^i; starts as the constant 1
    poly = [1.0]
    for r in roots:
        nxt = [0.0] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] += c
            nxt[i] -= r * c
        poly = nxt
    return poly[:-1]


def elementary_symmetric(kv: KnotVector, j: int) -> np.ndarray:
    """Elementary symmetric functions ``r_{j,0..n}`` of the knots ``t_{-n+j+1..j}``."""
    n = kv.degree
    if not 0 <= j <= n + kv.m:
        raise ValueError(f"index {j} outside 0..{n + kv.m}")
    window = kv.full[j + 1:j + n + 1]
    w = monic_from_roots(window)
    r = np.empty(n + 1)
    r[0] = 1.0
    for h in range(1, n + 1):
        r[h] = (-1) ** h * w[n - h]
    return r


def refinement_matrix(source: KnotVector, target: KnotVector) -> np.ndarray:
    """Matrix ``R`` mapping coefficients over ``source`` to coefficients over ``target``."""
    if source.degree != target.degree:
        raise ValueError("refinement requires equal degrees")
    if not source.is_subset_of(target):
        raise ValueError("target knot vector does not contain the source knots")
    if source == target:
        return np.eye(source.dim)
    return _backend.oslo_matrix(source.full, target.full, source.degree)


def knot_refine(s: Spline, target: KnotVector) -> Spline:
    """Express ``s`` over the finer knot vector ``target`` (Oslo algorithm)."""
    return Spline(target, refinement_matrix(s.kv, target) @ s.coeffs)


def refine_curve(curve: SplineCurve, target: KnotVector) -> SplineCurve:
    return SplineCurve(target, refinement_matrix(curve.kv, target) @ curve.control_points)


def lambda_table(j: int, kv_k: KnotVector) -> np.ndarray:
    """Divided-difference weights for the (n+1)-th derivative of a degree-(2n+1) B-spline.

    ``kv_k`` is the degree ``n`` knot vector ``T_k``; the degree ``2n+1``
    B-spline ``j`` (``0 <= j < k``) has knots ``t_{-n+j}, ..., t_{n+j+2}`` of
    ``T_k``. Row ``v`` of the returned ``(n+2, n+2)`` array holds
    ``lambda_{v,0..v}``; entries with ``q > v`` are zero, and quotients with a
    zero denominator are set to zero.
    """
    n, k = kv_k.degree, kv_k.m
    if not 0 <= j <= k - 1:
        raise ValueError(f"index {j} outside 0..{k - 1}")
    lam = np.zeros((n + 2, n + 2))
    lam[0, 0] = 1.0
    for v in range(1, n + 2):
        for q in range(v + 1):
            prev = lam[v - 1, q] if q <= v - 1 else 0.0
            prev_left = lam[v - 1, q - 1] if q >= 1 else 0.0
            denom = kv_k.knot(n + j + q - v + 2) - kv_k.knot(-n + j + q)
            lam[v, q] = (prev - prev_left) / denom if denom != 0.0 else 0.0
    return lam


def deriv_np1_bspline(j: int, kv_k: KnotVector) -> Spline:
    """(n+1)-th derivative of degree-(2n+1) B-spline ``j`` over ``T_k`` as a degree-n spline."""
    n = kv_k.degree
    lam = lambda_table(j, kv_k)
    scale = math.factorial(2 * n + 1) / math.factorial(n)
    coeffs = np.zeros(kv_k.dim)
    coeffs[j:j + n + 2] = scale * lam[n + 1, : n + 2]
    return Spline(kv_k, coeffs)


def divided_difference(nodes: Sequence[float], derivs: Callable[[float, int], float]) -> float:
    """Divided difference ``[x_0, ..., x_k] f`` with confluent (Hermite) nodes.

    ``derivs(x, r)`` must return ``f^{(r)}(x)``; derivatives are only
    requested at repeated nodes.
    """
    z = np.sort(np.asarray(nodes, dtype=float))
    c = np.array([derivs(x, 0) for x in z], dtype=float)
    for k in range(1, z.size):
        for i in range(z.size - 1, k - 1, -1):
            if z[i] == z[i - k]:
                c[i] = derivs(z[i], k) / math.factorial(k)
            else:
                c[i] = (c[i] - c[i - 1]) / (z[i] - z[i - k])
    return float(c[-1])


def default_anchor(kv_m: KnotVector, i: int, kv_k: KnotVector | None = None) -> float:
    """Midpoint of ``[t_{-n+i}, t_{i+1})`` in ``kv_m``, nudged off multiple knots of ``kv_k``."""
    n = kv_m.degree
    lo, hi = kv_m.knot(-n + i), kv_m.knot(i + 1)
    s = 0.5 * (lo + hi)
    coarse = kv_k if kv_k is not None else kv_m
    if coarse.multiplicity(s) >= 2:
        s += 1e-6 * (hi - lo)
    return s


def gamma_cross_check(beta: Spline, i: int, kv_m: KnotVector, s_i: float | None = None) -> float:
    """Coefficient ``i`` of ``beta`` refined into ``kv_m`` via divided differences.

    Evaluates ``sum_h beta_h (t_{h+1} - t_{-n+h}) [t_{-n+h}, ..., t_{h+1}] g_i``
    on the knots of ``beta.kv``, with
    ``g_i(y) = (y - s_i)_+^0 prod_{r=1..n} (y - t^{(m)}_{-n+i+r})``.
    Independent of the admissible anchor ``s_i``; serves as a check on the
    Oslo refinement.
    """
    kv_k = beta.kv
    n = kv_k.degree
    if kv_m.degree != n or not kv_k.is_subset_of(kv_m):
        raise ValueError("kv_m must refine the knot vector of beta with the same degree")
    if not 0 <= i <= n + kv_m.m:
        raise ValueError(f"index {i} outside 0..{n + kv_m.m}")
    lo, hi = kv_m.knot(-n + i), kv_m.knot(i + 1)
    if s_i is None:
        s_i = default_anchor(kv_m, i, kv_k)
    if not lo <= s_i < hi:
        raise ValueError(f"anchor {s_i!r} outside [{lo}, {hi})")
    if kv_k.multiplicity(s_i) >= 2:
        raise ValueError(f"anchor {s_i!r} coincides with a multiple knot")

    roots = [kv_m.knot(-n + i + r) for r in range(1, n + 1)]
    psi = np.polynomial.Polynomial.fromroots(roots) if roots else np.polynomial.Polynomial([1.0])

    def g(y, r):
        if y <= s_i:
            return 0.0
        return float(psi.deriv(r)(y)) if r else float(psi(y))

    total = 0.0
    for h in range(n + kv_k.m + 1):
        if beta.coeffs[h] == 0.0:
            continue
        nodes = [kv_k.knot(s) for s in range(-n + h, h + 2)]
        width = nodes[-1] - nodes[0]
        total += beta.coeffs[h] * width * divided_difference(nodes, g)
    return total


def random_knot_vector(degree: int, m: int, rng: np.random.Generator) -> KnotVector:
    """Random clamped knot vector with ``m`` interior knots counted with multiplicity.

    Multiplicities are drawn from ``1..max(degree, 1)``; positions are uniform
    on (0.01, 0.99).
    """
    if m < 0:
        raise ValueError("number of interior knots must be non-negative")
    cap = max(degree, 1)
    mults = []
    left = m
    while left:
        k = int(rng.integers(1, min(cap, left) + 1))
        mults.append(k)
        left -= k
    positions = np.sort(rng.uniform(0.01, 0.99, size=len(mults)))
    while len(positions) and np.any(np.diff(positions) <= 0):
        positions = np.sort(rng.uniform(0.01, 0.99, size=len(mults)))
    return KnotVector(degree, tuple(zip(positions.tolist(), mults)))
