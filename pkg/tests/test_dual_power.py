import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dualspline.dual_power import (
    TruncatedDualState,
    build_dual_truncated,
    dual_power_basis,
    dual_truncated_eval,
    extend_dual_truncated,
    initial_state,
    truncated_basis_eval,
    v_moment_hypergeometric,
    v_moment_vector,
    v_truncated_pair,
)
from dualspline.exceptions import ConditioningError


def _rule(breaks, npts):
    x, w = np.polynomial.legendre.leggauss(npts)
    br = np.asarray(breaks, dtype=float)
    nodes = np.concatenate([a + (b - a) * (x + 1) / 2 for a, b in zip(br[:-1], br[1:])])
    weights = np.concatenate([(b - a) * w / 2 for a, b in zip(br[:-1], br[1:])])
    return nodes, weights


def _duality_gram(state):
    n, knots = state.n, list(state.knots)
    x, w = _rule([0.0] + knots + [1.0], n + 2)
    B = truncated_basis_eval(n, knots, x)
    D = np.column_stack([dual_truncated_eval(state, j, x) for j in range(state.size)])
    return B.T @ (w[:, None] * D)


def _direct_duals(n, knots):
    """B-coordinates of the duals by inverting the truncated-power Gram."""
    x, w = _rule([0.0] + sorted(knots) + [1.0], n + 2)
    B = truncated_basis_eval(n, sorted(knots), x)
    return B, np.linalg.inv(B.T @ (w[:, None] * B))


@st.composite
def tame_knots(draw):
    n = draw(st.integers(0, 2))
    m = draw(st.integers(0, 3))
    cells = np.linspace(0.2, 0.9, m + 1)
    offs = [draw(st.floats(0.15, 0.85)) for _ in range(m)]
    return n, [float(a + f * (b - a)) for a, b, f in zip(cells[:-1], cells[1:], offs)]


# --- dual power basis -------------------------------------------------------------

def test_first_column():
    phi = dual_power_basis(6)
    np.testing.assert_array_equal(phi[:, 0], 2 * np.arange(7) + 1)


def test_linear_duals():
    s = initial_state(1)
    t = np.linspace(0, 1, 9)
    np.testing.assert_allclose(dual_truncated_eval(s, 0, t), 4 - 6 * t, atol=1e-14)
    np.testing.assert_allclose(dual_truncated_eval(s, 1, t), 12 * t - 6, atol=1e-14)
    assert dual_truncated_eval(s, 1, 0.0) == pytest.approx(-6.0)
    # <1, d_1> = 0 and <t, d_1> = 1 exactly (polynomial integrals)
    assert np.polynomial.Polynomial([-6, 12]).integ()(1.0) == 0
    assert np.polynomial.Polynomial([0, -6, 12]).integ()(1.0) == pytest.approx(1.0)


def test_constant_dual():
    s = initial_state(0)
    np.testing.assert_allclose(dual_truncated_eval(s, 0, np.linspace(0, 1, 5)), 1.0)


@pytest.mark.parametrize("n", range(7))
def test_seed_duality(n):
    assert np.max(np.abs(_duality_gram(initial_state(n)) - np.eye(n + 1))) <= 1e-10


def test_negative_degree():
    with pytest.raises(ValueError):
        dual_power_basis(-1)


# --- moments --------------------------------------------------------------------------

def test_first_moments():
    v = v_moment_vector(2, 0.5)
    assert v[0] == pytest.approx(1 / 24, rel=1e-15)
    t, n = 0.3, 4
    v = v_moment_vector(n, t)
    assert v[0] == pytest.approx((1 - t) ** (n + 1) / (n + 1), rel=1e-15)
    assert v[1] == pytest.approx(t * v[0] + (1 - t) ** (n + 2) / (n + 2), rel=1e-15)


@given(st.integers(0, 8), st.floats(0.01, 0.99))
def test_moments_match_quadrature(n, t_i):
    x, w = _rule([t_i, 1.0], n + 2)
    quad = np.array([w @ (x**j * (x - t_i) ** n) for j in range(n + 1)])
    np.testing.assert_allclose(v_moment_vector(n, t_i), quad, rtol=1e-12)
    np.testing.assert_allclose(v_moment_hypergeometric(n, t_i), quad, rtol=1e-11)


def test_moments_reject_boundary_knots():
    for bad in (0.0, 1.0):
        with pytest.raises(ValueError):
            v_moment_vector(2, bad)


def test_pair_self_product():
    n, t = 3, 0.35
    assert v_truncated_pair(n, t, t) == pytest.approx((1 - t) ** (2 * n + 1) / (2 * n + 1), rel=1e-14)


def test_pair_linear_example():
    # int_{1/2}^1 (t - 1/4)(t - 1/2) dt = 1/24 + 1/32 = 7/96
    assert v_truncated_pair(1, 0.25, 0.5) == pytest.approx(7 / 96, rel=1e-12)


@given(st.integers(0, 6), st.floats(0.01, 0.99), st.floats(0.0, 1.0))
def test_pair_positive_and_matches_quadrature(n, t_i, frac):
    t_j = max(0.005, frac * t_i)
    x, w = _rule([t_i, 1.0], n + 1)
    quad = w @ ((x - t_j) ** n * (x - t_i) ** n)
    got = v_truncated_pair(n, t_j, t_i)
    assert got > 0
    assert got == pytest.approx(quad, rel=1e-10)


def test_pair_order():
    with pytest.raises(ValueError):
        v_truncated_pair(2, 0.6, 0.4)


# --- extension ------------------------------------------------------------------------

def test_linear_single_knot():
    s = build_dual_truncated(1, [0.5])
    assert isinstance(s, TruncatedDualState) and s.size == 3
    assert np.max(np.abs(_duality_gram(s) - np.eye(3))) <= 1e-10


def test_linear_two_knots_full_gram():
    s = build_dual_truncated(1, [0.3, 0.7])
    assert np.max(np.abs(_duality_gram(s) - np.eye(4))) <= 1e-10


def test_quadratic_half_matches_direct_inverse():
    s = build_dual_truncated(2, [0.5])
    B, Dinv = _direct_duals(2, [0.5])
    t = np.linspace(0, 1, 41)
    Bt = truncated_basis_eval(2, [0.5], t)
    for j in range(4):
        np.testing.assert_allclose(dual_truncated_eval(s, j, t), Bt @ Dinv[:, j], atol=1e-9)


def test_knot_order_does_not_matter():
    a = extend_dual_truncated(extend_dual_truncated(initial_state(2), 1 / 3), 2 / 3)
    b = extend_dual_truncated(extend_dual_truncated(initial_state(2), 2 / 3), 1 / 3)
    assert a.knots == b.knots
    np.testing.assert_allclose(a.Psi, b.Psi, atol=1e-9)
    np.testing.assert_allclose(a.Lambda, b.Lambda, atol=1e-9)


def test_empty_knot_list_is_seed():
    s = build_dual_truncated(3, [])
    np.testing.assert_array_equal(s.Psi, dual_power_basis(3))
    assert s.Lambda.shape == (0, 4)


@given(tame_knots())
def test_full_duality_well_conditioned(case):
    n, knots = case
    s = build_dual_truncated(n, knots)
    assert np.max(np.abs(_duality_gram(s) - np.eye(s.size))) <= 1e-8


@given(tame_knots())
def test_iterative_equals_direct_inverse(case):
    n, knots = case
    s = build_dual_truncated(n, knots)
    _, Dinv = _direct_duals(n, knots)
    t = np.linspace(0, 1, 57)
    Bt = truncated_basis_eval(n, sorted(knots), t)
    for j in range(s.size):
        np.testing.assert_allclose(dual_truncated_eval(s, j, t), Bt @ Dinv[:, j],
                                   atol=1e-7 * max(1.0, np.max(np.abs(Dinv))))


@given(tame_knots())
def test_duals_are_piecewise_polynomials(case):
    n, knots = case
    s = build_dual_truncated(n, knots)
    br = [0.0] + sorted(knots) + [1.0]
    for a, b in zip(br[:-1], br[1:]):
        x = np.linspace(a, b, n + 4)[1:-1]  # n + 2 interior samples
        V = np.vander(x, n + 1)
        for j in range(s.size):
            y = dual_truncated_eval(s, j, x)
            coef, *_ = np.linalg.lstsq(V, y, rcond=None)
            assert np.max(np.abs(V @ coef - y)) <= 1e-8 * max(1.0, np.max(np.abs(y)))


def test_extension_rejections():
    s = build_dual_truncated(2, [0.4])
    with pytest.raises(ValueError):
        extend_dual_truncated(s, 0.4)
    with pytest.raises(ValueError):
        extend_dual_truncated(s, 1.0)
    with pytest.raises(ValueError):
        build_dual_truncated(2, [0.3, 0.3])


def test_degenerate_extension_raises():
    with pytest.raises(ConditioningError):
        build_dual_truncated(1, [0.5, 0.5 + 1e-15])


def test_eval_errors():
    s = build_dual_truncated(1, [0.5])
    with pytest.raises(IndexError):
        dual_truncated_eval(s, 3, 0.5)
    with pytest.raises(ValueError):
        dual_truncated_eval(s, 0, 1.2)
