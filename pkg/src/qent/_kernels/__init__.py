"""Reduction kernels with a compiled core and a NumPy fallback.

The compiled extension (``_fast``, Cython) is preferred when it imported
cleanly; otherwise the NumPy implementation is used.  Set ``QENT_BACKEND`` to
``compiled`` or ``numpy`` to force one side (``compiled`` raises if the
extension is not built).  The selection happens once, at import time.
"""

import os

from . import _numpy

try:
    from . import _fast
except ImportError:
    _fast = None


def _select():
    choice = os.environ.get("QENT_BACKEND", "auto")
    if choice == "numpy":
        return _numpy
    if choice == "compiled":
        if _fast is None:
            raise ImportError(
                "QENT_BACKEND=compiled but the qent._kernels._fast extension "
                "is not built; run `pip install .` or unset QENT_BACKEND"
            )
        return _fast
    if choice != "auto":
        raise ImportError(f"unknown QENT_BACKEND value {choice!r}")
    return _numpy if _fast is None else _fast


_active = _select()

name = _active.name
sum_squares = _active.sum_squares
sum_powers = _active.sum_powers
shannon_nats = _active.shannon_nats
inner = _active.inner
series_partial_sums = _active.series_partial_sums
batch_sum_squares = _active.batch_sum_squares
batch_sum_powers = _active.batch_sum_powers
batch_shannon_nats = _active.batch_shannon_nats
batch_inner = _active.batch_inner
batch_series_partial_sums = _active.batch_series_partial_sums
