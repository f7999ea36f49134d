import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import knot_vectors, random_kv, scipy_basis, scipy_gram
from dualspline.dual_bspline import (
    DualBasisMatrix,
    bspline_to_orthogonal,
    build_dual,
    dual_eval,
    duality_residual,
)
from dualspline.exceptions import ConditioningError
from dualspline.ortho_basis import OrthoSplineBasis, extend_orthogonal, gram_bsplines
from dualspline.spline_core import KnotVector, Spline, make_knot_vector


def test_constant_space():
    d = build_dual(KnotVector(0))
    np.testing.assert_allclose(d.Dmat, [[1.0]], atol=1e-15)
    assert duality_residual(d) == 0.0


def test_linear_bernstein():
    d = build_dual(KnotVector(1))
    np.testing.assert_allclose(d.Dmat, [[4, -2], [-2, 4]], atol=1e-13)


def test_linear_bernstein_dual_functions():
    d = build_dual(KnotVector(1))
    t = np.linspace(0, 1, 11)
    np.testing.assert_allclose(dual_eval(d, 0, t), 4 - 6 * t, atol=1e-13)
    np.testing.assert_allclose(dual_eval(d, 1, t), 6 * t - 2, atol=1e-13)


def test_dual_index_out_of_range():
    d = build_dual(KnotVector(2))
    with pytest.raises(IndexError):
        dual_eval(d, 3, 0.5)
    with pytest.raises(IndexError):
        dual_eval(d, -1, 0.5)


@pytest.mark.parametrize("seed", range(25))
def test_matches_gram_inverse(seed):
    rng = np.random.default_rng(seed)
    kv = random_kv(rng, int(rng.integers(0, 4)), int(rng.integers(0, 5)))
    d = build_dual(kv)
    assert np.max(np.abs(d.Dmat - np.linalg.inv(scipy_gram(kv)))) <= 1e-8


@given(knot_vectors())
def test_duality_and_symmetry(kv):
    d = build_dual(kv)
    assert isinstance(d, DualBasisMatrix) and d.dim == kv.dim
    assert duality_residual(d) <= 1e-9
    assert np.max(np.abs(d.Dmat - d.Dmat.T)) <= 1e-9


@given(knot_vectors(max_degree=4, max_knots=6))
def test_duality_by_quadrature_of_dual_functions(kv):
    d = build_dual(kv)
    x, w = np.polynomial.legendre.leggauss(kv.degree + 1)
    br = np.asarray(kv.breakpoints)
    nodes = np.concatenate([a + (b - a) * (x + 1) / 2 for a, b in zip(br[:-1], br[1:])])
    weights = np.concatenate([(b - a) * w / 2 for a, b in zip(br[:-1], br[1:])])
    N = scipy_basis(kv, nodes)
    D = np.column_stack([dual_eval(d, j, nodes) for j in range(kv.dim)])
    assert np.max(np.abs(N.T @ (weights[:, None] * D) - np.eye(kv.dim))) <= 1e-9


@given(knot_vectors(max_degree=4, max_knots=6), st.integers(0, 2**32 - 1))
def test_scale_invariance(kv, seed):
    ob = extend_orthogonal(kv)
    scale = np.random.default_rng(seed).uniform(0.2, 5.0, kv.dim) * np.random.default_rng(seed).choice([-1, 1], kv.dim)
    scaled = OrthoSplineBasis(kv, ob.A * scale[:, None], ob.h * scale**2)
    np.testing.assert_allclose(build_dual(kv, scaled).Dmat, build_dual(kv, ob).Dmat, atol=1e-9 * np.max(np.abs(build_dual(kv, ob).Dmat)))


def test_rejects_foreign_orthogonal_basis():
    with pytest.raises(ValueError):
        build_dual(KnotVector(2), extend_orthogonal(KnotVector(3)))


@pytest.mark.parametrize("n", range(4))
def test_guard_fires_when_support_collapses(n):
    kv = make_knot_vector(n, [(0.5 + i * 1e-14, 1) for i in range(n + 2)])
    with pytest.raises(ConditioningError, match="ill-conditioned"):
        build_dual(kv)


def test_single_tiny_gap_is_still_well_posed():
    kv = make_knot_vector(3, [(0.4, 1), (0.4 + 1e-14, 1), (0.7, 1)])
    assert duality_residual(build_dual(kv)) <= 1e-8


def test_to_orthogonal_examples():
    kv = make_knot_vector(2, [(0.3, 1), (0.6, 2)])
    g = gram_bsplines(kv)
    ob = extend_orthogonal(kv, g)
    for i in range(kv.dim):
        np.testing.assert_allclose(bspline_to_orthogonal(Spline(kv, ob.A[i]), ob, g), np.eye(kv.dim)[i], atol=1e-10)
    np.testing.assert_allclose(bspline_to_orthogonal(Spline(kv, np.ones(kv.dim)), ob, g), np.eye(kv.dim)[0], atol=1e-12)


@given(knot_vectors(), st.integers(0, 2**32 - 1))
def test_to_orthogonal_round_trip(kv, seed):
    g = gram_bsplines(kv)
    ob = extend_orthogonal(kv, g)
    s = Spline(kv, np.random.default_rng(seed).normal(size=kv.dim))
    sigma = bspline_to_orthogonal(s, ob, g)
    assert np.max(np.abs(sigma @ ob.A - s.coeffs)) <= 1e-9


def test_to_orthogonal_rejects_mismatch():
    kv = KnotVector(2)
    with pytest.raises(ValueError):
        bspline_to_orthogonal(Spline(KnotVector(3), np.ones(4)), extend_orthogonal(kv), gram_bsplines(kv))
