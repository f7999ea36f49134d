"""Composite Gauss-Legendre rules on [0, 1]."""

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=64)
def _reference_rule(npts):
    x, w = np.polynomial.legendre.leggauss(npts)
    return (x + 1.0) / 2.0, w / 2.0


def gauss_legendre(npts, a=0.0, b=1.0):
    """Nodes and weights of the ``npts``-point rule on ``[a, b]``."""
    x, w = _reference_rule(int(npts))
    return a + (b - a) * x, (b - a) * w


def composite_rule(breakpoints, npts):
    """Gauss-Legendre rule with ``npts`` nodes on every nonempty interval.

    Exact for piecewise polynomials of degree ``2 * npts - 1`` whose pieces
    change only at ``breakpoints``.
    """
    br = np.unique(np.asarray(breakpoints, dtype=float))
    x, w = _reference_rule(int(npts))
    lengths = np.diff(br)
    nodes = (br[:-1, None] + lengths[:, None] * x[None, :]).ravel()
    weights = (lengths[:, None] * w[None, :]).ravel()
    return nodes, weights


def nodes_for_degree(poly_degree):
    """Smallest Gauss-Legendre node count exact for the given polynomial degree."""
    return max(1, (int(poly_degree) + 2) // 2)
