"""Legendre-like orthogonal basis of a spline space in B-spline coordinates.

The first ``n + 1`` members are the shifted Legendre polynomials; member
``n + k`` is the element of the degree ``n`` spline space over the first
``k`` interior knots that is orthogonal to the space over the first ``k - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, factorial

import numpy as np

from . import _backend
from .exceptions import ConditioningError
from .legendre import legendre_norm, pochhammer
from .quadrature import composite_rule
from .spline_core import KnotVector, elementary_symmetric, refinement_matrix


@dataclass(frozen=True)
class GramMatrix:
    """``entries[i, j] = <N_i, N_j>`` on [0, 1]."""

    kv: KnotVector
    entries: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class OrthoSplineBasis:
    """Row ``i`` of ``A`` holds the B-spline coefficients of ``L_i``; ``h[i] = <L_i, L_i>``."""

    kv: KnotVector
    A: np.ndarray = field(repr=False)
    h: np.ndarray = field(repr=False)


def gram_bsplines(kv: KnotVector) -> GramMatrix:
    """B-spline Gram matrix, exact up to rounding.

    Uses ``n + 1`` Gauss-Legendre nodes per knot interval, enough for the
    degree ``2n`` integrands. Only the ``n + 1`` B-splines alive on each
    interval are touched, so the result is banded with bandwidth ``n``.
    """
    nodes, weights = composite_rule(kv.breakpoints, kv.degree + 1)
    spans, values = _backend.basis_nonzero(kv.full, kv.degree, nodes)
    entries = _backend.gram_accumulate(spans, values, weights, kv.dim)
    entries = 0.5 * (entries + entries.T)
    entries.setflags(write=False)
    return GramMatrix(kv, entries)


def legendre_rows(kv: KnotVector) -> np.ndarray:
    """B-spline coefficients of ``L_0, ..., L_n``, shape ``(n + 1, n + m + 1)``.

    Uses the polar form of ``t^h``: its coefficient on ``N_j`` is the
    elementary symmetric function of degree ``h`` of the ``n`` knots inside
    the support of ``N_j``, divided by ``C(n, h)``.
    """
    n = kv.degree
    sym = np.array([elementary_symmetric(kv, j) for j in range(kv.dim)])  # (dim, n+1)
    rows = np.empty((n + 1, kv.dim))
    for i in range(n + 1):
        weights = np.array(
            [pochhammer(-i, h) * pochhammer(i + 1, h) / (comb(n, h) * factorial(h) ** 2)
             for h in range(i + 1)],
            dtype=float,
        )
        rows[i] = sym[:, : i + 1] @ weights
    return rows


def _null_vector(C: np.ndarray) -> np.ndarray:
    _, s, vt = np.linalg.svd(C, full_matrices=True)
    # C has one more column than rows; its rank must be full
    if s.size and s[-1] <= 1e-13 * s[0]:
        raise ConditioningError(
            "orthogonal complement is not one-dimensional "
            f"(singular values {s[0]:.3e} .. {s[-1]:.3e}); knots too close together?"
        )
    return vt[-1]


def _normalize(row: np.ndarray) -> np.ndarray:
    row = row / np.linalg.norm(row)
    if row[np.argmax(np.abs(row))] < 0:
        row = -row
    return row


def extend_orthogonal(kv: KnotVector, gram: GramMatrix | None = None) -> OrthoSplineBasis:
    """Full orthogonal basis of the spline space over ``kv``.

    For ``k = 1..m`` the new member is the null vector of
    ``C = R_{k-1}^T G R_k``, where ``R_k`` refines the space over the first
    ``k`` knots into ``kv``. Its coordinates over ``kv`` are ``R_k x``.
    New rows have unit Euclidean norm and a positive largest entry.
    """
    if gram is None:
        gram = gram_bsplines(kv)
    G = gram.entries
    n, m = kv.degree, kv.m
    A = np.empty((kv.dim, kv.dim))
    A[: n + 1] = legendre_rows(kv)
    R_prev = refinement_matrix(kv.prefix(0), kv)
    for k in range(1, m + 1):
        R_k = refinement_matrix(kv.prefix(k), kv)
        C = R_prev.T @ G @ R_k
        A[n + k] = _normalize(R_k @ _null_vector(C))
        R_prev = R_k
    h = np.empty(kv.dim)
    h[: n + 1] = [legendre_norm(i) for i in range(n + 1)]
    h[n + 1:] = np.einsum("ij,jk,ik->i", A[n + 1:], G, A[n + 1:])
    A.setflags(write=False)
    h.setflags(write=False)
    return OrthoSplineBasis(kv, A, h)


def orthogonality_residual(ob: OrthoSplineBasis, g: GramMatrix) -> float:
    """Largest off-diagonal entry of ``A G A^T`` relative to ``max h``."""
    if ob.kv != g.kv:
        raise ValueError("knot vectors differ")
    M = ob.A @ g.entries @ ob.A.T
    off = M - np.diag(np.diag(M))
    return float(np.max(np.abs(off)) / np.max(ob.h)) if M.size > 1 else 0.0
