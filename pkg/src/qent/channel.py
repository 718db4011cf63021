"""Row-stochastic channel matrices and the measures built on them.

A :class:`ChannelMatrix` holds the conditional probabilities of a discrete
memoryless channel, entry (i, j) = p(output j | input i).  The operations
cover the push-forward of an input distribution, the channel quadratic form
p^T Q p, the inner-product measure J between input and output distributions,
invariant (stationary) distributions of square channels, joint distributions,
and quadratic surrogates for conditional entropy and mutual information.

The quadratic form is evaluated as a literal bilinear sum so that tests can
compare it against the independent route push_forward-then-inner-product.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from . import _kernels as kernels
from .errors import (
    DimensionMismatchError,
    EmptyInputError,
    NegativeEntryError,
    NonFiniteEntryError,
    NonUniqueStationaryError,
    NotNormalizedError,
    NotSquareError,
    RaggedMatrixError,
    RowNotNormalizedError,
    StationarySolveError,
)
from .prob import SIMPLEX_EPS, ProbVec, _readonly, gini_surrogate

#: max-norm bound the stationary solve must meet.
STATIONARY_RESIDUAL_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class ChannelMatrix:
    """A validated row-stochastic matrix; ``matrix`` is read-only float64."""

    matrix: np.ndarray

    def __post_init__(self):
        try:
            arr = np.asarray(self.matrix, dtype=np.float64)
        except ValueError as exc:
            raise RaggedMatrixError(f"channel grid is ragged: {exc}") from None
        if arr.ndim != 2:
            raise RaggedMatrixError(f"expected a 2-D grid, got ndim={arr.ndim}")
        if arr.size == 0:
            raise EmptyInputError("channel grid must be non-empty")
        if not np.all(np.isfinite(arr)):
            raise NonFiniteEntryError("channel entries must be finite")
        if np.any(arr < 0.0):
            i, j = np.unravel_index(int(np.argmin(arr)), arr.shape)
            raise NegativeEntryError(f"entry ({i}, {j}) is negative: {arr[i, j]!r}")
        row_sums = np.sum(arr, axis=1)
        bad = np.abs(row_sums - 1.0) > SIMPLEX_EPS
        if np.any(bad):
            i = int(np.argmax(bad))
            raise RowNotNormalizedError(i, float(row_sums[i]))
        object.__setattr__(self, "matrix", _readonly(arr))

    @property
    def rows(self) -> int:
        """Input alphabet size M."""
        return self.matrix.shape[0]

    @property
    def cols(self) -> int:
        """Output alphabet size N."""
        return self.matrix.shape[1]

    @property
    def is_square(self) -> bool:
        return self.matrix.shape[0] == self.matrix.shape[1]

    def __repr__(self) -> str:
        return f"ChannelMatrix({self.matrix.tolist()!r})"


@dataclass(frozen=True, eq=False)
class JointDistribution:
    """Joint input/output probabilities, grid(i, j) = p_X(i) * Q(i, j)."""

    grid: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.grid, dtype=np.float64)
        if arr.ndim != 2 or arr.size == 0:
            raise RaggedMatrixError("joint grid must be a non-empty 2-D array")
        if np.any(arr < 0.0):
            raise NegativeEntryError("joint probabilities must be non-negative")
        total = float(np.sum(arr))
        if abs(total - 1.0) > SIMPLEX_EPS:
            raise NotNormalizedError(f"joint probabilities sum to {total!r}, not 1")
        object.__setattr__(self, "grid", _readonly(arr))

    def input_marginal(self) -> np.ndarray:
        """Row sums: the distribution of the input symbol."""
        return np.sum(self.grid, axis=1)

    def output_marginal(self) -> np.ndarray:
        """Column sums: the distribution of the output symbol."""
        return np.sum(self.grid, axis=0)


@dataclass(frozen=True, eq=False)
class StationaryResult:
    """Invariant distribution pi with pi^T Q = pi^T, plus the solve residual."""

    pi: ProbVec
    residual: float


def make_channel(raw: Sequence[Sequence[float]]) -> ChannelMatrix:
    """Validate a rectangular grid of reals as a channel matrix."""
    return ChannelMatrix(raw)


def _check_input_dim(p_x: ProbVec, ch: ChannelMatrix) -> None:
    if p_x.dim != ch.rows:
        raise DimensionMismatchError(
            f"input has {p_x.dim} symbols but the channel has {ch.rows} rows"
        )


def push_forward(p_x: ProbVec, ch: ChannelMatrix) -> ProbVec:
    """Output distribution p_Y, p_Y(j) = sum_i p_X(i) Q(i, j)."""
    _check_input_dim(p_x, ch)
    return ProbVec._from_trusted(p_x.probs @ ch.matrix)


def quadratic_form(p_x: ProbVec, ch: ChannelMatrix) -> float:
    """The bilinear form p_X^T Q p_X of a square channel.

    Equals the inner product of the output distribution with the input
    distribution; with the identity channel it reduces to sum p_i^2, the
    squared Euclidean length.
    """
    if not ch.is_square:
        raise NotSquareError(
            f"quadratic form requires a square channel, got {ch.rows}x{ch.cols}"
        )
    _check_input_dim(p_x, ch)
    return float(np.einsum("i,ij,j->", p_x.probs, ch.matrix, p_x.probs))


def j_measure(p_x: ProbVec, ch: ChannelMatrix) -> float:
    """Inner product <p_X, p_Y> between channel input and output distributions.

    Defined for square channels only: the inner product pairs vectors of equal
    length.  Symmetric in its two vectors, zero exactly when they are
    orthogonal (disjoint supports).
    """
    if not ch.is_square:
        raise DimensionMismatchError(
            "the inner-product measure pairs input and output vectors of equal "
            f"length; channel is {ch.rows}x{ch.cols}"
        )
    _check_input_dim(p_x, ch)
    p_y = push_forward(p_x, ch)
    return kernels.inner(p_x.probs, p_y.probs)


def _recurrent_class_count(matrix: np.ndarray) -> int:
    """Number of closed communicating classes of the positive-entry digraph."""
    n = matrix.shape[0]
    adjacency = sp.csr_matrix(matrix > 0.0)
    n_comp, labels = connected_components(adjacency, directed=True, connection="strong")
    has_exit = np.zeros(n_comp, dtype=bool)
    rows, cols = (matrix > 0.0).nonzero()
    for i, j in zip(rows, cols):
        if labels[i] != labels[j]:
            has_exit[labels[i]] = True
    return int(np.sum(~has_exit))


def _solve_stationary(matrix: np.ndarray) -> tuple[np.ndarray, float]:
    """Solve pi^T Q = pi^T, sum pi = 1 for a square stochastic matrix.

    One equation of (Q^T - I) pi = 0 is redundant (the rows sum to zero), so
    the last is replaced by the normalization constraint.
    """
    n = matrix.shape[0]
    if _recurrent_class_count(matrix) > 1:
        raise NonUniqueStationaryError(
            "the chain has more than one recurrent class; every convex "
            "combination of their invariant distributions is stationary"
        )
    a = matrix.T - np.eye(n)
    a[-1, :] = 1.0
    b = np.zeros(n)
    b[-1] = 1.0
    try:
        pi = np.linalg.solve(a, b)
    except np.linalg.LinAlgError as exc:
        raise StationarySolveError(f"linear solve failed: {exc}") from None
    if float(np.min(pi)) < -1e-9:
        raise StationarySolveError(
            f"solve produced a significantly negative mass {float(np.min(pi))!r}"
        )
    pi = np.maximum(pi, 0.0)
    pi = pi / np.sum(pi)
    residual = float(np.max(np.abs(pi @ matrix - pi)))
    if residual >= STATIONARY_RESIDUAL_TOL:
        raise StationarySolveError(
            f"stationarity residual {residual!r} exceeds {STATIONARY_RESIDUAL_TOL!r}"
        )
    return pi, residual


def stationary_distribution(ch: ChannelMatrix) -> StationaryResult:
    """Unique invariant distribution of a square channel, if it exists.

    Raises NonUniqueStationaryError when the chain has several recurrent
    classes (e.g. the identity matrix), StationarySolveError when the linear
    solve fails or misses the residual bound.
    """
    if not ch.is_square:
        raise NotSquareError(
            f"stationary analysis requires a square channel, got {ch.rows}x{ch.cols}"
        )
    pi, residual = _solve_stationary(np.asarray(ch.matrix))
    return StationaryResult(pi=ProbVec._from_trusted(pi), residual=residual)


def joint_distribution(p_x: ProbVec, ch: ChannelMatrix) -> JointDistribution:
    """Joint distribution with grid(i, j) = p_X(i) Q(i, j)."""
    _check_input_dim(p_x, ch)
    return JointDistribution(p_x.probs[:, None] * ch.matrix)


def quadratic_conditional_entropy(p_x: ProbVec, ch: ChannelMatrix) -> float:
    """Quadratic surrogate for the conditional entropy of the input given
    the output: sum_y p_Y(y) f(p_{X|Y=y}) with f(p) = 1 - sum p_i^2.

    Mirrors the exact decomposition H(X|Y) = sum_y p(y) H(X|Y=y) with the
    quadratic surrogate applied to each conditional slice; output symbols of
    probability zero contribute nothing.  A deterministic (identity) channel
    yields exactly 0.
    """
    _check_input_dim(p_x, ch)
    joint = p_x.probs[:, None] * ch.matrix
    p_y = np.sum(joint, axis=0)
    mask = p_y > 0.0
    cond = joint[:, mask] / p_y[mask]
    f_cols = 1.0 - np.einsum("xm,xm->m", cond, cond)
    return float(p_y[mask] @ f_cols)


def quadratic_mutual_information(p_x: ProbVec, ch: ChannelMatrix) -> float:
    """f(p_X) minus the quadratic conditional-entropy surrogate.

    Zero when output is independent of input (all channel rows equal) and
    f(p_X) for the identity channel.
    """
    return gini_surrogate(p_x) - quadratic_conditional_entropy(p_x, ch)
