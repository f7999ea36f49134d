# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_pykernels``.

Signatures and results match the numpy fallback exactly; only speed differs.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef Py_ssize_t _span(const double[::1] knots, Py_ssize_t degree,
                      Py_ssize_t n_basis, double x) noexcept nogil:
    cdef Py_ssize_t lo = degree, hi = n_basis, mid
    if x >= knots[n_basis]:
        return n_basis - 1
    # invariant: knots[lo] <= x < knots[hi]
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if knots[mid] <= x:
            lo = mid
        else:
            hi = mid
    return lo


def find_spans(knots, Py_ssize_t degree, x):
    cdef const double[::1] kv = np.ascontiguousarray(knots, dtype=np.float64)
    cdef const double[::1] xs = np.ascontiguousarray(np.atleast_1d(x), dtype=np.float64).ravel()
    cdef Py_ssize_t n_basis = kv.shape[0] - degree - 1
    cdef Py_ssize_t p, npts = xs.shape[0]
    out = np.empty(npts, dtype=np.intp)
    cdef Py_ssize_t[::1] spans = out
    with nogil:
        for p in range(npts):
            spans[p] = _span(kv, degree, n_basis, xs[p])
    return out


def basis_nonzero(knots, Py_ssize_t degree, x):
    cdef const double[::1] kv = np.ascontiguousarray(knots, dtype=np.float64)
    cdef const double[::1] xs = np.ascontiguousarray(np.atleast_1d(x), dtype=np.float64).ravel()
    cdef Py_ssize_t n_basis = kv.shape[0] - degree - 1
    cdef Py_ssize_t npts = xs.shape[0]
    spans_arr = np.empty(npts, dtype=np.intp)
    values_arr = np.zeros((npts, degree + 1), dtype=np.float64)
    cdef Py_ssize_t[::1] spans = spans_arr
    cdef double[:, ::1] values = values_arr
    cdef double[::1] left = np.empty(degree + 1)
    cdef double[::1] right = np.empty(degree + 1)
    cdef Py_ssize_t p, j, r, l
    cdef double xv, saved, temp
    with nogil:
        for p in range(npts):
            xv = xs[p]
            l = _span(kv, degree, n_basis, xv)
            spans[p] = l
            values[p, 0] = 1.0
            for j in range(1, degree + 1):
                left[j] = xv - kv[l + 1 - j]
                right[j] = kv[l + j] - xv
                saved = 0.0
                for r in range(j):
                    temp = values[p, r] / (right[r + 1] + left[j - r])
                    values[p, r] = saved + right[r + 1] * temp
                    saved = left[j - r] * temp
                values[p, j] = saved
    return spans_arr, values_arr


def gram_accumulate(spans, values, weights, Py_ssize_t n_basis):
    cdef const Py_ssize_t[::1] sp = np.ascontiguousarray(spans, dtype=np.intp)
    cdef const double[:, ::1] val = np.ascontiguousarray(values, dtype=np.float64)
    cdef const double[::1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef Py_ssize_t degree = val.shape[1] - 1
    gram_arr = np.zeros((n_basis, n_basis), dtype=np.float64)
    cdef double[:, ::1] gram = gram_arr
    cdef Py_ssize_t p, r, s, first
    cdef double wr
    with nogil:
        for p in range(sp.shape[0]):
            first = sp[p] - degree
            for r in range(degree + 1):
                wr = w[p] * val[p, r]
                for s in range(degree + 1):
                    gram[first + r, first + s] += wr * val[p, s]
    return gram_arr


def oslo_matrix(old_knots, new_knots, Py_ssize_t degree):
    cdef const double[::1] tau = np.ascontiguousarray(old_knots, dtype=np.float64)
    cdef const double[::1] t = np.ascontiguousarray(new_knots, dtype=np.float64)
    cdef Py_ssize_t n_old = tau.shape[0] - degree - 1
    cdef Py_ssize_t n_new = t.shape[0] - degree - 1
    mat_arr = np.zeros((n_new, n_old), dtype=np.float64)
    cdef double[:, ::1] mat = mat_arr
    cdef double[::1] b = np.empty(degree + 1)
    cdef double[::1] nxt = np.empty(degree + 1)
    cdef Py_ssize_t i, k, r, j, mu
    cdef double x, w
    with nogil:
        for i in range(n_new):
            mu = _span(tau, degree, n_old, t[i])
            b[0] = 1.0
            for k in range(1, degree + 1):
                x = t[i + k]
                for r in range(k + 1):
                    nxt[r] = 0.0
                for r in range(k):
                    j = mu - k + 1 + r
                    w = (x - tau[j]) / (tau[j + k] - tau[j])
                    nxt[r] += (1.0 - w) * b[r]
                    nxt[r + 1] += w * b[r]
                for r in range(k + 1):
                    b[r] = nxt[r]
            for r in range(degree + 1):
                mat[i, mu - degree + r] = b[r]
    return mat_arr


def clenshaw_legendre(coeffs, x):
    cdef const double[::1] c = np.ascontiguousarray(coeffs, dtype=np.float64).ravel()
    cdef const double[::1] xs = np.ascontiguousarray(np.atleast_1d(x), dtype=np.float64).ravel()
    cdef Py_ssize_t npts = xs.shape[0]
    out = np.empty(npts, dtype=np.float64)
    cdef double[::1] res = out
    cdef Py_ssize_t p, k
    cdef double b1, b2, tmp, u
    with nogil:
        for p in range(npts):
            u = 1.0 - 2.0 * xs[p]
            b1 = 0.0
            b2 = 0.0
            for k in range(c.shape[0] - 1, -1, -1):
                tmp = c[k] + (2 * k + 1) * u / (k + 1) * b1 - (k + 1.0) / (k + 2.0) * b2
                b2 = b1
                b1 = tmp
            res[p] = b1
    return out
