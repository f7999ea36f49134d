import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st
from scipy.interpolate import BSpline

from dualspline.spline_core import KnotVector

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def scipy_basis(kv, t):
    """Independent B-spline values from scipy's design matrix."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    out = BSpline.design_matrix(t, np.asarray(kv.full), kv.degree).toarray()
    # scipy's last span is closed on the right already; the degree-0 case still needs it
    out[t == 1.0] = 0.0
    out[t == 1.0, -1] = 1.0
    return out


def scipy_gram(kv, npts=None):
    """Gram matrix by dense Gauss-Legendre quadrature of scipy basis values."""
    npts = npts or kv.degree + 2
    x, w = np.polynomial.legendre.leggauss(npts)
    br = np.asarray(kv.breakpoints)
    nodes = np.concatenate([a + (b - a) * (x + 1) / 2 for a, b in zip(br[:-1], br[1:])])
    weights = np.concatenate([(b - a) * w / 2 for a, b in zip(br[:-1], br[1:])])
    B = scipy_basis(kv, nodes)
    return B.T @ (weights[:, None] * B)


def random_kv(rng, n, m, lo=0.02, hi=0.98, min_gap=0.02):
    """Knot vector with m interior knots (with multiplicity up to n), well separated."""
    cap = max(n, 1)
    mults = []
    left = m
    while left:
        k = int(rng.integers(1, min(cap, left) + 1))
        mults.append(k)
        left -= k
    while True:
        pos = np.sort(rng.uniform(lo, hi, len(mults)))
        if len(pos) < 2 or np.min(np.diff(pos)) > min_gap:
            break
    return KnotVector(n, tuple(zip(pos.tolist(), mults)))


@st.composite
def knot_vectors(draw, max_degree=5, max_knots=10, allow_multiple=True):
    n = draw(st.integers(0, max_degree))
    m = draw(st.integers(0, max_knots))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    kv = random_kv(rng, n, m)
    if not allow_multiple:
        kv = KnotVector(n, tuple((p, 1) for p, _ in kv.interior))
    return kv


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
