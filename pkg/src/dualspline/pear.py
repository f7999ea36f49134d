"""The degree-5 planar "Pear" curve and its four reference experiments."""

import math
from fractions import Fraction

from .spline_core import KnotVector, SplineCurve

PEAR_CONTROL_POINTS = [
    (0.385, 0.845), (0.325, 0.76), (0.305, 0.635), (0.275, 0.79), (0.295, 0.895),
    (0.025, 0.885), (0.035, 0.79), (0.11, 0.71), (0.405, 0.705), (0.2, 0.675),
    (0.1, 0.59), (0.185, 0.365), (0.01, 0.45), (0.01, 0.045), (0.13, 0.02),
    (0.4, 0.005), (0.625, 0.045), (0.67, 0.185), (0.655, 0.395), (0.47, 0.405),
    (0.535, 0.51), (0.47, 0.645), (0.39, 0.71), (0.285, 0.665), (0.395, 0.835),
]

PEAR_DEGREE = 5


def _twentieths(skip=()):
    return [k / 20 for k in range(1, 20) if k not in skip]


def pear_knots(degree=PEAR_DEGREE, drop=()):
    """Knot vector with interior knots ``k/20``, minus the ``k`` listed in ``drop``."""
    return KnotVector(degree, tuple((t, 1) for t in _twentieths(drop)))


def pear_curve() -> SplineCurve:
    return SplineCurve(pear_knots(), PEAR_CONTROL_POINTS)


# name -> (target degree, dropped k in k/20, reported (E2, Einf))
PEAR_EXPERIMENTS = {
    "remove7": (5, (1, 4, 7, 10, 13, 16, 19), (1.08e-2, 2.95e-2)),
    "remove4": (5, (4, 7, 13, 16), (3.58e-3, 7.92e-3)),
    "degree3": (3, (), (2.76e-3, 3.41e-2)),
    "degree4_remove3": (4, (4, 13, 16), (4.64e-3, 1.55e-2)),
}


def dropped_fractions(drop):
    return [Fraction(k, 20) for k in drop]


def agrees_to_3_digits(value: float, reported: float) -> bool:
    """``value`` rounds to ``reported`` at 3 significant digits, give or take one unit."""
    unit = 10.0 ** (math.floor(math.log10(abs(reported))) - 2)
    rounded = float(f"{value:.2e}")
    return abs(rounded - reported) <= unit * (1 + 1e-9)
