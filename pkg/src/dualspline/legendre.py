"""Shifted Legendre polynomials on [0, 1] and terminating hypergeometric sums."""

from fractions import Fraction

import numpy as np

from . import _backend


def pochhammer(h, k):
    """Rising factorial ``(h)_k = h (h+1) ... (h+k-1)``, with ``(h)_0 = 1``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    out = 1.0 if not isinstance(h, (int, Fraction)) else 1
    for i in range(k):
        out *= h + i
    return out


def hyp2f1_terminating(s, a, b, t):
    """Finite sum ``2F1(-s, a; b | t) = sum_{k=0}^{s} (-s)_k (a)_k / ((b)_k k!) t^k``.

    Terms are generated from their ratio. The loop stops once ``(-s)_k``
    vanishes, so a ``b`` that is a non-positive integer below ``-s + 1`` is
    harmless.

    Raises
    ------
    ZeroDivisionError
        If ``(b)_k`` vanishes before the numerator does.
    """
    if s < 0 or int(s) != s:
        raise ValueError("s must be a non-negative integer")
    term = 1.0
    total = 1.0
    for k in range(int(s)):
        denom = (b + k) * (k + 1)
        if denom == 0:
            raise ZeroDivisionError(f"2F1 denominator (b)_{k + 1} vanishes for b={b}")
        term *= (-s + k) * (a + k) / denom * t
        total += term
    return total


def shifted_legendre_eval(i, t):
    """``L_i(t)`` by the three-term recurrence."""
    if i < 0:
        raise ValueError("index must be non-negative")
    t = np.asarray(t, dtype=float)
    prev, cur = np.ones_like(t), 1.0 - 2.0 * t
    if i == 0:
        return prev[()]
    for k in range(1, i):
        prev, cur = cur, ((2 * k + 1) * (1.0 - 2.0 * t) * cur - k * prev) / (k + 1)
    return cur[()]


def legendre_monomial_coeffs(i):
    """Power-basis coefficients of ``L_i``: ``(-i)_h (i+1)_h / (h!)^2`` for ``h = 0..i``."""
    if i < 0:
        raise ValueError("index must be non-negative")
    coeffs = [Fraction(1)]
    for h in range(i):
        coeffs.append(coeffs[-1] * (-i + h) * (i + 1 + h) / (h + 1) ** 2)
    return np.array([float(c) for c in coeffs])


def clenshaw_eval(coeffs, t):
    """``sum_i coeffs[i] L_i(t)`` by Clenshaw's backward recurrence, O(len(coeffs))."""
    coeffs = np.asarray(coeffs, dtype=float)
    t_arr = np.asarray(t, dtype=float)
    if coeffs.size == 0:
        return np.zeros_like(t_arr)[()]
    out = _backend.clenshaw_legendre(coeffs, t_arr.ravel())
    return out.reshape(t_arr.shape)[()]


def legendre_norm(i):
    """``<L_i, L_i> = 1 / (2i + 1)`` on [0, 1]."""
    if i < 0:
        raise ValueError("index must be non-negative")
    return float(Fraction(1, 2 * i + 1))


def legendre_power_matrix(n):
    """Lower-triangular ``M[i, h]``: coefficient of ``t^h`` in ``L_i``, ``i, h <= n``."""
    mat = np.zeros((n + 1, n + 1))
    for i in range(n + 1):
        mat[i, : i + 1] = legendre_monomial_coeffs(i)
    return mat
