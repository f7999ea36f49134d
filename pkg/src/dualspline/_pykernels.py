"""Numpy implementations of the numerical kernels.

These are the reference versions of the routines in ``_ckernels.pyx`` and
are used whenever the compiled extension is unavailable. Both modules
expose exactly the same functions with the same signatures.
"""

import numpy as np


def find_spans(knots, degree, x):
    """Knot-span indices ``l`` with ``knots[l] <= x < knots[l+1]``.

    Points at the right end of the domain are assigned to the last nonempty
    span, which makes evaluation there a left limit.
    """
    knots = np.asarray(knots, dtype=float)
    x = np.asarray(x, dtype=float)
    n_basis = knots.size - degree - 1
    spans = np.searchsorted(knots, x, side="right") - 1
    return np.clip(spans, degree, n_basis - 1).astype(np.intp)


def basis_nonzero(knots, degree, x):
    """Evaluate the ``degree + 1`` B-splines that are nonzero at each point.

    Parameters
    ----------
    knots : array_like, shape (K,)
        Full (clamped) knot vector.
    degree : int
        Spline degree.
    x : array_like, shape (P,)
        Evaluation points inside ``[knots[0], knots[-1]]``.

    Returns
    -------
    spans : numpy.ndarray of int, shape (P,)
        Span index of each point; basis ``spans[p] - degree + r`` has value
        ``values[p, r]``.
    values : numpy.ndarray, shape (P, degree + 1)
    """
    knots = np.asarray(knots, dtype=float)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    spans = find_spans(knots, degree, x)
    npts = x.size
    values = np.zeros((npts, degree + 1))
    values[:, 0] = 1.0
    left = np.empty((npts, degree + 1))
    right = np.empty((npts, degree + 1))
    for j in range(1, degree + 1):
        left[:, j] = x - knots[spans + 1 - j]
        right[:, j] = knots[spans + j] - x
        saved = np.zeros(npts)
        for r in range(j):
            temp = values[:, r] / (right[:, r + 1] + left[:, j - r])
            values[:, r] = saved + right[:, r + 1] * temp
            saved = left[:, j - r] * temp
        values[:, j] = saved
    return spans, values


def gram_accumulate(spans, values, weights, n_basis):
    """Assemble ``sum_p w_p N_a(x_p) N_b(x_p)`` into a dense symmetric matrix."""
    spans = np.asarray(spans)
    values = np.asarray(values, dtype=float)
    weights = np.asarray(weights, dtype=float)
    degree = values.shape[1] - 1
    gram = np.zeros((n_basis, n_basis))
    first = spans - degree
    weighted = values * weights[:, None]
    for r in range(degree + 1):
        for s in range(degree + 1):
            np.add.at(gram, (first + r, first + s), weighted[:, r] * values[:, s])
    return gram


def oslo_matrix(old_knots, new_knots, degree):
    """Refinement matrix ``R`` with ``N_old_j = sum_i R[i, j] N_new_i``.

    Row ``i`` holds the discrete B-splines ``alpha_j(i)``, obtained by
    running the B-spline triangle on the old knots with the new interior
    knots ``new_knots[i+1:i+degree+1]`` as arguments (Oslo algorithm 1).
    """
    old_knots = np.asarray(old_knots, dtype=float)
    new_knots = np.asarray(new_knots, dtype=float)
    n_old = old_knots.size - degree - 1
    n_new = new_knots.size - degree - 1
    mat = np.zeros((n_new, n_old))
    for i in range(n_new):
        ti = new_knots[i]
        mu = int(np.searchsorted(old_knots, ti, side="right")) - 1
        mu = min(max(mu, degree), n_old - 1)
        b = np.zeros(degree + 1)
        b[0] = 1.0
        for k in range(1, degree + 1):
            x = new_knots[i + k]
            nxt = np.zeros(degree + 1)
            # b[r] holds basis mu - k + 1 + r of degree k - 1
            for r in range(k):
                j = mu - k + 1 + r
                w = (x - old_knots[j]) / (old_knots[j + k] - old_knots[j])
                nxt[r] += (1.0 - w) * b[r]
                nxt[r + 1] += w * b[r]
            b = nxt
        mat[i, mu - degree:mu + 1] = b
    return mat


def clenshaw_legendre(coeffs, x):
    """Evaluate ``sum_i coeffs[i] L_i(x)`` for shifted Legendre ``L_i`` on [0, 1]."""
    coeffs = np.asarray(coeffs, dtype=float)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    b1 = np.zeros_like(x)
    b2 = np.zeros_like(x)
    u = 1.0 - 2.0 * x
    for k in range(coeffs.size - 1, -1, -1):
        alpha = (2 * k + 1) * u / (k + 1)
        beta = -(k + 1) / (k + 2)
        b1, b2 = coeffs[k] + alpha * b1 + beta * b2, b1
    return b1
