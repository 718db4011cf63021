# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled reduction kernels; drop-in replacement for ``_numpy``.

Loops run in index order, so the bit-level contracts of the numpy backend
(sum_powers(p, 2) == sum_squares(p), order-1 series entry == 1 - sum_squares,
inner(x, y) == inner(y, x)) hold here as well.
"""

from libc.math cimport log, pow

import numpy as np

name = "compiled"


cdef double _sum_squares(const double[::1] p) noexcept nogil:
    cdef double s = 0.0
    cdef Py_ssize_t i
    for i in range(p.shape[0]):
        s += p[i] * p[i]
    return s


cdef double _sum_powers(const double[::1] p, double q) noexcept nogil:
    cdef double s = 0.0
    cdef Py_ssize_t i
    if q == 1.0:
        for i in range(p.shape[0]):
            s += p[i]
    elif q == 2.0:
        s = _sum_squares(p)
    elif q == 3.0:
        for i in range(p.shape[0]):
            s += p[i] * p[i] * p[i]
    else:
        for i in range(p.shape[0]):
            s += pow(p[i], q)
    return s


cdef double _shannon_nats(const double[::1] p) noexcept nogil:
    cdef double s = 0.0
    cdef Py_ssize_t i
    for i in range(p.shape[0]):
        if p[i] > 0.0:
            s -= p[i] * log(p[i])
    return s


cdef double _inner(const double[::1] x, const double[::1] y) noexcept nogil:
    cdef double s = 0.0
    cdef Py_ssize_t i
    for i in range(x.shape[0]):
        s += x[i] * y[i]
    return s


def sum_squares(const double[::1] p):
    return _sum_squares(p)


def sum_powers(const double[::1] p, double q):
    return _sum_powers(p, q)


def shannon_nats(const double[::1] p):
    return _shannon_nats(p)


def inner(const double[::1] x, const double[::1] y):
    return _inner(x, y)


def series_partial_sums(const double[::1] p, int order):
    cdef Py_ssize_t m = p.shape[0]
    out_arr = np.empty(order, dtype=np.float64)
    work = np.empty((2, m), dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double[:, ::1] wk = work
    cdef double s, t, c
    cdef Py_ssize_t i
    cdef int n
    s = 1.0 - _sum_squares(p)
    out[0] = s
    if order > 1:
        for i in range(m):
            c = 1.0 - p[i]
            if c < 0.0:
                c = 0.0
            wk[0, i] = c            # complement
            wk[1, i] = p[i] * c     # running p_i * c_i^n
        for n in range(2, order + 1):
            t = 0.0
            for i in range(m):
                wk[1, i] *= wk[0, i]
                t += wk[1, i]
            s += t / n
            out[n - 1] = s
    return out_arr


def batch_sum_squares(const double[:, ::1] x):
    cdef Py_ssize_t rows = x.shape[0]
    out_arr = np.empty(rows, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t t
    for t in range(rows):
        out[t] = _sum_squares(x[t])
    return out_arr


def batch_sum_powers(const double[:, ::1] x, double q):
    cdef Py_ssize_t rows = x.shape[0]
    out_arr = np.empty(rows, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t t
    for t in range(rows):
        out[t] = _sum_powers(x[t], q)
    return out_arr


def batch_shannon_nats(const double[:, ::1] x):
    cdef Py_ssize_t rows = x.shape[0]
    out_arr = np.empty(rows, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t t
    for t in range(rows):
        out[t] = _shannon_nats(x[t])
    return out_arr


def batch_inner(const double[:, ::1] x, const double[:, ::1] y):
    cdef Py_ssize_t rows = x.shape[0]
    out_arr = np.empty(rows, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t t
    for t in range(rows):
        out[t] = _inner(x[t], y[t])
    return out_arr


def batch_series_partial_sums(const double[:, ::1] x, int order):
    cdef Py_ssize_t rows = x.shape[0]
    cdef Py_ssize_t m = x.shape[1]
    out_arr = np.empty((rows, order), dtype=np.float64)
    work = np.empty((2, m), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef double[:, ::1] wk = work
    cdef double s, t, c
    cdef Py_ssize_t r, i
    cdef int n
    for r in range(rows):
        s = 1.0 - _sum_squares(x[r])
        out[r, 0] = s
        if order > 1:
            for i in range(m):
                c = 1.0 - x[r, i]
                if c < 0.0:
                    c = 0.0
                wk[0, i] = c
                wk[1, i] = x[r, i] * c
            for n in range(2, order + 1):
                t = 0.0
                for i in range(m):
                    wk[1, i] *= wk[0, i]
                    t += wk[1, i]
                s += t / n
                out[r, n - 1] = s
    return out_arr
