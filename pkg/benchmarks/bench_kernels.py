"""Compiled kernels versus the numpy fallback.

Run with ``python benchmarks/bench_kernels.py``. Each row times one kernel on
the same inputs for both backends and reports the speed-up.
"""

import argparse
import timeit

import numpy as np

from dualspline import _pykernels
from dualspline.pear import pear_curve, pear_knots
from dualspline.quadrature import composite_rule
from dualspline.spline_core import KnotVector

try:
    from dualspline import _ckernels
except ImportError:
    _ckernels = None


def cases(npoints):
    rng = np.random.default_rng(0)
    kv = pear_knots()
    fine = KnotVector.from_knots(5, sorted(list(kv.interior_flat) + list(rng.uniform(0.01, 0.99, 40))))
    x = rng.uniform(0, 1, npoints)
    nodes, weights = composite_rule(fine.breakpoints, 6)
    spans, vals = _pykernels.basis_nonzero(fine.full, 5, nodes)
    coeffs = rng.normal(size=12)
    return {
        "find_spans": lambda k: k.find_spans(fine.full, 5, x),
        "basis_nonzero": lambda k: k.basis_nonzero(fine.full, 5, x),
        "gram_accumulate": lambda k: k.gram_accumulate(spans, vals, weights, fine.dim),
        "oslo_matrix": lambda k: k.oslo_matrix(kv.full, fine.full, 5),
        "clenshaw_legendre": lambda k: k.clenshaw_legendre(coeffs, x),
    }


def best_of(fn, repeat):
    timer = timeit.Timer(fn)
    number, _ = timer.autorange()
    return min(timer.repeat(repeat, number)) / number


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--points", type=int, default=20000)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels not built; only the numpy fallback is available")
    print(f"{'kernel':<20} {'numpy [ms]':>11} {'cython [ms]':>12} {'speed-up':>9}")
    for name, fn in cases(args.points).items():
        py = best_of(lambda: fn(_pykernels), args.repeat) * 1e3
        if _ckernels is None:
            print(f"{name:<20} {py:11.3f} {'-':>12} {'-':>9}")
            continue
        cy = best_of(lambda: fn(_ckernels), args.repeat) * 1e3
        print(f"{name:<20} {py:11.3f} {cy:12.3f} {py / cy:8.1f}x")

    from dualspline import approx

    curve = pear_curve()
    target = pear_knots(3)
    approx.dual_basis.cache_clear()
    t = best_of(lambda: (approx.dual_basis.cache_clear(), approx.reduce_and_remove(curve, 3, target)), args.repeat)
    print(f"\nend to end: Pear degree 3 reduction, {t * 1e3:.2f} ms (active backend)")


if __name__ == "__main__":
    main()
