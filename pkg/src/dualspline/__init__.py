"""Dual bases for splines and L2-optimal spline curve approximation."""

__version__ = "0.1.0"

from ._backend import BACKEND
from .approx import (
    ApproxReport,
    degree_reduce,
    l2_error,
    linf_error,
    project_curve,
    reduce_and_remove,
    remove_knots,
    to_truncated_power,
)
from .dual_bspline import DualBasisMatrix, build_dual, dual_eval, duality_residual
from .dual_power import TruncatedDualState, build_dual_truncated, dual_truncated_eval
from .exceptions import ConditioningError
from .ortho_basis import GramMatrix, OrthoSplineBasis, extend_orthogonal, gram_bsplines
from .spline_core import KnotVector, Spline, SplineCurve, make_knot_vector

__all__ = [
    "BACKEND",
    "ApproxReport",
    "ConditioningError",
    "DualBasisMatrix",
    "GramMatrix",
    "KnotVector",
    "OrthoSplineBasis",
    "Spline",
    "SplineCurve",
    "TruncatedDualState",
    "build_dual",
    "build_dual_truncated",
    "degree_reduce",
    "dual_eval",
    "dual_truncated_eval",
    "duality_residual",
    "extend_orthogonal",
    "gram_bsplines",
    "l2_error",
    "linf_error",
    "make_knot_vector",
    "project_curve",
    "reduce_and_remove",
    "remove_knots",
    "to_truncated_power",
]
