"""Dual basis of the B-spline basis with respect to the L2 inner product on [0, 1].

Dual function ``j`` is ``sum_i A[i, j] / h[i] * L_i``. In B-spline
coordinates this is row ``j`` of ``A^T diag(1/h) A``, which is the inverse of
the Gram matrix. The result does not depend on how the orthogonal rows are
scaled.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import ConditioningError
from .ortho_basis import GramMatrix, OrthoSplineBasis, extend_orthogonal, gram_bsplines
from .spline_core import KnotVector, Spline, spline_eval

#: Builds fail when ``min(h) < NORM_RATIO_GUARD * max(h)``.
NORM_RATIO_GUARD = 1e-13


@dataclass(frozen=True)
class DualBasisMatrix:
    """Dual B-spline basis.

    Attributes
    ----------
    kv : KnotVector
    rho : numpy.ndarray
        ``rho[j, i]`` is the weight of ``L_i`` in dual function ``j``.
    Dmat : numpy.ndarray
        Row ``j`` holds the B-spline coefficients of dual function ``j``.
    """

    kv: KnotVector
    rho: np.ndarray = field(repr=False)
    Dmat: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.kv.dim


def build_dual(
    kv: KnotVector,
    ortho: OrthoSplineBasis | None = None,
    gram: GramMatrix | None = None,
) -> DualBasisMatrix:
    """Dual B-spline basis over ``kv``.

    ``ortho`` may be any orthogonal basis of the space (rows in B-spline
    coordinates with matching norms); by default it is built with
    :func:`~dualspline.ortho_basis.extend_orthogonal`.

    Raises
    ------
    ConditioningError
        If the orthogonal norms spread over more than 13 orders of magnitude.
    """
    if ortho is None:
        ortho = extend_orthogonal(kv, gram if gram is not None else gram_bsplines(kv))
    elif ortho.kv != kv:
        raise ValueError("orthogonal basis belongs to a different knot vector")
    h = np.asarray(ortho.h, dtype=float)
    if np.min(h) < NORM_RATIO_GUARD * np.max(h) or np.min(h) <= 0:
        raise ConditioningError(
            f"orthogonal norms range from {np.min(h):.3e} to {np.max(h):.3e}; "
            "the B-spline Gram matrix is too ill-conditioned"
        )
    rho = ortho.A.T / h[None, :]
    Dmat = rho @ ortho.A
    Dmat = 0.5 * (Dmat + Dmat.T)
    rho.setflags(write=False)
    Dmat.setflags(write=False)
    return DualBasisMatrix(kv, rho, Dmat)


def dual_eval(d: DualBasisMatrix, j: int, t):
    """Value of dual function ``j`` at ``t`` (scalar or array)."""
    if not 0 <= j < d.dim:
        raise IndexError(f"dual index {j} outside 0..{d.dim - 1}")
    return spline_eval(d.kv, d.Dmat[j], t)


def duality_residual(d: DualBasisMatrix, gram: GramMatrix | None = None) -> float:
    """``max |Dmat G - I|``."""
    G = (gram if gram is not None else gram_bsplines(d.kv)).entries
    return float(np.max(np.abs(d.Dmat @ G - np.eye(d.dim))))


def bspline_to_orthogonal(s: Spline, ob: OrthoSplineBasis, g: GramMatrix) -> np.ndarray:
    """Coefficients ``sigma`` with ``s = sum_i sigma_i L_i``; ``sigma @ ob.A == s.coeffs``."""
    if not (s.kv == ob.kv == g.kv):
        raise ValueError("knot vectors differ")
    return (ob.A @ g.entries @ s.coeffs) / ob.h
