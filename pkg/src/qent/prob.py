"""Probability vectors and single-distribution measures.

A :class:`ProbVec` is an immutable, validated point on the probability
simplex.  Inputs are rejected, never repaired: entries must be non-negative
and sum to 1 within ``SIMPLEX_EPS``.  On top of it live the Shannon entropy,
the Tsallis family S_q, the quadratic surrogate f(p) = 1 - sum p_i^2 (the
Gini-Simpson index, equal to S_2), the complement-series approximation of the
entropy in nats, and the L^q norm family M_q.

Exact identities honoured at the bit level within one kernel backend:

* ``gini_surrogate(p) == tsallis_entropy(p, 2)``
* ``entropy_series_approx(p, k).partial_sums[0] == gini_surrogate(p)``
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import _kernels as kernels
from .errors import (
    EmptyInputError,
    NegativeEntryError,
    NonFiniteEntryError,
    NonPositiveQError,
    NotNormalizedError,
    QBelowOneError,
    ZeroOrderError,
)

#: |sum - 1| tolerance for membership of the probability simplex.
SIMPLEX_EPS = 1e-9

#: |q - 1| below this evaluates the Tsallis family by its Shannon limit,
#: avoiding the near-0/0 cancellation of the defining expression.
Q_LIMIT_EPS = 1e-8

_LN2 = math.log(2.0)


def _readonly(arr: np.ndarray) -> np.ndarray:
    out = np.ascontiguousarray(arr, dtype=np.float64)
    if out is arr:
        out = out.copy()
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class ProbVec:
    """A validated probability vector; ``probs`` is read-only float64."""

    probs: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.probs, dtype=np.float64)
        if arr.ndim != 1:
            raise NotNormalizedError(f"expected a 1-D sequence, got ndim={arr.ndim}")
        if arr.size == 0:
            raise EmptyInputError("probability vector must be non-empty")
        if not np.all(np.isfinite(arr)):
            raise NonFiniteEntryError("probability entries must be finite")
        if np.any(arr < 0.0):
            i = int(np.argmin(arr))
            raise NegativeEntryError(f"entry {i} is negative: {arr[i]!r}")
        total = float(np.sum(arr))
        if abs(total - 1.0) > SIMPLEX_EPS:
            raise NotNormalizedError(f"entries sum to {total!r}, not 1")
        object.__setattr__(self, "probs", _readonly(arr))

    @classmethod
    def _from_trusted(cls, arr: np.ndarray) -> "ProbVec":
        """Wrap an array that is on the simplex by construction (no re-check)."""
        v = object.__new__(cls)
        object.__setattr__(v, "probs", _readonly(arr))
        return v

    @property
    def dim(self) -> int:
        """Support size M."""
        return self.probs.shape[0]

    def __len__(self) -> int:
        return self.probs.shape[0]

    def __repr__(self) -> str:
        return f"ProbVec({self.probs.tolist()!r})"


@dataclass(frozen=True, eq=False)
class ApproxSeries:
    """Order-K truncations of the entropy's complement series (in nats).

    ``partial_sums[k-1]`` is the order-k approximation; the sequence is
    non-decreasing by construction and bounded above by the exact entropy.
    ``complements`` holds c_i = max(1 - p_i, 0), the per-symbol expansion
    variables.
    """

    order: int
    partial_sums: np.ndarray
    complements: np.ndarray

    def value_at(self, k: int) -> float:
        """Order-k partial sum, 1-indexed."""
        if not 1 <= k <= self.order:
            raise IndexError(f"order {k} outside 1..{self.order}")
        return float(self.partial_sums[k - 1])


@dataclass(frozen=True)
class MeasureReport:
    """All scalar measures of one distribution, evaluated together."""

    shannon_bits: float
    shannon_nats: float
    gini_surrogate: float
    tsallis: Mapping[float, float]
    lq_norms: Mapping[float, float]
    notes: tuple[str, ...] = ()


def make_prob_vec(raw: Sequence[float] | Iterable[float]) -> ProbVec:
    """Validate a sequence of reals as a probability vector.

    Entries are never renormalized; a sequence that does not already lie on
    the simplex (within ``SIMPLEX_EPS``) is rejected.
    """
    arr = np.asarray(list(raw) if not isinstance(raw, np.ndarray) else raw,
                     dtype=np.float64)
    return ProbVec(arr)


def shannon_entropy(p: ProbVec, base: str = "bits") -> float:
    """Entropy -sum p_i log p_i, in bits or nats (0 log 0 = 0)."""
    nats = kernels.shannon_nats(p.probs)
    if base == "nats":
        return nats
    if base == "bits":
        return nats / _LN2
    raise ValueError(f"base must be 'bits' or 'nats', got {base!r}")


def tsallis_entropy(p: ProbVec, q: float) -> float:
    """Tsallis entropy S_q(p) = (1 - sum p_i^q) / (q - 1) for q > 0.

    Within ``Q_LIMIT_EPS`` of q = 1 the Shannon entropy in nats is returned,
    which is the q -> 1 limit of the family.
    """
    q = float(q)
    if q <= 0.0:
        raise NonPositiveQError(f"q must be positive, got {q!r}")
    if abs(q - 1.0) <= Q_LIMIT_EPS:
        return kernels.shannon_nats(p.probs)
    return (1.0 - kernels.sum_powers(p.probs, q)) / (q - 1.0)


def gini_surrogate(p: ProbVec) -> float:
    """Quadratic entropy surrogate f(p) = 1 - sum p_i^2 (Gini-Simpson index)."""
    return 1.0 - kernels.sum_squares(p.probs)


def entropy_series_approx(p: ProbVec, order: int) -> ApproxSeries:
    """Order-1..K partial sums of the entropy's complement series, in nats.

    Writing each entry as p_i = 1 - c_i, the entropy expands into
    sum_i p_i * (c_i + c_i^2/2 + c_i^3/3 + ...); truncating after n = k gives
    the order-k value.  Order 1 is exactly the quadratic surrogate f(p), and
    symbols with p_i = 0 contribute nothing at any order.
    """
    order = int(order)
    if order < 1:
        raise ZeroOrderError(f"order must be >= 1, got {order}")
    sums = kernels.series_partial_sums(p.probs, order)
    complements = np.maximum(1.0 - p.probs, 0.0)
    return ApproxSeries(
        order=order,
        partial_sums=_readonly(sums),
        complements=_readonly(complements),
    )


def lq_norm(p: ProbVec, q: float) -> float:
    """L^q norm M_q(p) = (sum p_i^q)^(1/q), defined for q >= 1."""
    q = float(q)
    if q < 1.0:
        raise QBelowOneError(f"L^q norm requires q >= 1, got {q!r}")
    return kernels.sum_powers(p.probs, q) ** (1.0 / q)


def norm_tsallis_residual(p: ProbVec, q: float) -> float:
    """|M_q^q - (1 - (q-1) S_q(p))|, the defect of the norm/Tsallis identity.

    Both sides are evaluated through their own public operation, so this is a
    genuine two-route check, not a restatement of one formula.  Requires
    q > 1 (at q = 1 both sides are trivially 1).
    """
    q = float(q)
    if q <= 1.0:
        raise QBelowOneError(f"identity residual requires q > 1, got {q!r}")
    lhs = lq_norm(p, q) ** q
    rhs = 1.0 - (q - 1.0) * tsallis_entropy(p, q)
    return abs(lhs - rhs)


def full_report(p: ProbVec, q_list: Sequence[float]) -> MeasureReport:
    """Evaluate every measure on one distribution.

    Tsallis values are computed for each q in ``q_list`` (all must be > 0);
    L^q norms only for the q >= 1 among them, with a note recording any
    skipped value.
    """
    nats = shannon_entropy(p, "nats")
    tsallis: dict[float, float] = {}
    norms: dict[float, float] = {}
    notes: list[str] = []
    for q in q_list:
        q = float(q)
        tsallis[q] = tsallis_entropy(p, q)
        if q >= 1.0:
            norms[q] = lq_norm(p, q)
        else:
            notes.append(f"L^q norm skipped for q={q!r} (defined for q >= 1)")
    return MeasureReport(
        shannon_bits=nats / _LN2,
        shannon_nats=nats,
        gini_surrogate=gini_surrogate(p),
        tsallis=tsallis,
        lq_norms=norms,
        notes=tuple(notes),
    )
