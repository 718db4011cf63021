"""NumPy implementations of the reduction kernels.

This is the fallback backend; ``_fast.pyx`` mirrors every function here with
plain C loops.  Within one backend the functions are arranged so that the
exact-identity contracts hold bit for bit: ``sum_powers(p, 2.0)`` evaluates
the very same expression as ``sum_squares(p)``, and the order-1 entry of
``series_partial_sums`` is literally ``1 - sum_squares(p)``.
"""

import numpy as np
from scipy.special import xlogy

name = "numpy"


def sum_squares(p):
    """Sum of squared entries of a 1-D vector."""
    return float(np.dot(p, p))


def sum_powers(p, q):
    """Sum of entries raised to the power q (q = 1, 2, 3 avoid libm pow)."""
    if q == 1.0:
        return float(np.sum(p))
    if q == 2.0:
        return float(np.dot(p, p))
    if q == 3.0:
        return float(np.sum(p * p * p))
    return float(np.sum(p**q))


def shannon_nats(p):
    """-sum p_i ln p_i with the 0 ln 0 = 0 convention."""
    return float(-np.sum(xlogy(p, p)))


def inner(x, y):
    """Plain inner product of two equal-length vectors."""
    return float(np.dot(x, y))


def series_partial_sums(p, order):
    """Partial sums of the complement-series expansion of the entropy in nats.

    Entry k-1 holds sum_i p_i * sum_{n<=k} c_i^n / n with c_i = max(1-p_i, 0).
    The order-1 entry is computed as 1 - sum_squares(p) so it agrees bit for
    bit with the quadratic surrogate; higher orders add the non-negative
    per-order increments, which makes the output non-decreasing by
    construction.
    """
    out = np.empty(order, dtype=np.float64)
    s = 1.0 - sum_squares(p)
    out[0] = s
    if order > 1:
        c = np.maximum(1.0 - p, 0.0)
        w = p * c
        for n in range(2, order + 1):
            w = w * c
            s += float(np.sum(w)) / n
            out[n - 1] = s
    return out


def batch_sum_squares(x):
    """Row-wise sum of squares of a 2-D sample matrix."""
    return np.einsum("tm,tm->t", x, x)


def batch_sum_powers(x, q):
    if q == 1.0:
        return np.sum(x, axis=1)
    if q == 2.0:
        return np.einsum("tm,tm->t", x, x)
    if q == 3.0:
        return np.sum(x * x * x, axis=1)
    return np.sum(x**q, axis=1)


def batch_shannon_nats(x):
    return -np.sum(xlogy(x, x), axis=1)


def batch_inner(x, y):
    """Row-wise inner products of two equally shaped 2-D matrices."""
    return np.einsum("tm,tm->t", x, y)


def batch_series_partial_sums(x, order):
    """Row-wise version of :func:`series_partial_sums`; returns (rows, order)."""
    rows = x.shape[0]
    out = np.empty((rows, order), dtype=np.float64)
    s = 1.0 - batch_sum_squares(x)
    out[:, 0] = s
    if order > 1:
        c = np.maximum(1.0 - x, 0.0)
        w = x * c
        for n in range(2, order + 1):
            w = w * c
            s = s + np.sum(w, axis=1) / n
            out[:, n - 1] = s
    return out
