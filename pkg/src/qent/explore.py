"""Randomized verification (or refutation, by witness) of the measure claims.

Each claim check samples the simplex and/or random channels from a seeded
generator, evaluates the claimed inequality or identity on every trial, and
returns a :class:`PropertyVerdict`.  Verdicts are deterministic functions of
(claim id, dim, trials, seed): draws come from one ``numpy`` Philox-family
generator in a documented order, and trial t consumes a fixed slice of the
stream, so parallel evaluation schemes would see the same per-trial inputs.

Some claims are expected to fail.  The triangle inequality for the
inner-product measure J is refuted by an analytic candidate that is always
checked first: a point mass pushed through a swap permutation twice gives
J(X;Y) = J(Y;Z) = 0 but J(X;Z) = 1.  Likewise J of a distribution with itself
(identity channel) is sum p_i^2 >= 1/M, never 0, so the self-measure-zero
axiom of a pseudo-metric fails on every sample.  Refuting verdicts carry a
witness that replays through the channel operations.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import _kernels as kernels
from .channel import ChannelMatrix, _solve_stationary, j_measure, push_forward
from .errors import ValidationError, ZeroOrderError
from .prob import ProbVec, gini_surrogate, make_prob_vec

HOLDS = "holds-on-sample"
REFUTED = "refuted"

#: documented CLI defaults
DEFAULT_TRIALS = 100_000
DEFAULT_THRESHOLD = 1e-9

#: slack allowed over the analytic maximum of the quadratic surrogate
MAX_CLAIM_TOL = 1e-12

#: two-sided tolerances of the Cauchy-Schwarz equality condition
CS_EQUALITY_TOL = 1e-12
VECTOR_EQ_TOL = 1e-9

CLAIM_MAX = "max-at-uniform"
CLAIM_CS = "cauchy-schwarz"
CLAIM_TRIANGLE = "triangle-inequality"
CLAIM_J_SYMMETRY = "j-symmetry"
CLAIM_J_NONNEG = "j-nonnegativity"
CLAIM_J_SELF = "j-self-measure-zero"

CONSTRAIN_MODES = ("none", "identical-channels", "stationary-input")


@dataclass(frozen=True)
class PropertyVerdict:
    """Outcome of one claim check.

    ``status == REFUTED`` implies a witness whose recorded inputs re-evaluate
    to the recorded violation; identical (claim_id, dim, trials, seed) always
    produce identical verdicts.
    """

    claim_id: str
    status: str
    trials: int
    witness: Optional[dict]
    seed: int

    @property
    def refuted(self) -> bool:
        return self.status == REFUTED


@dataclass(frozen=True, eq=False)
class ErrorCurve:
    """Per-order absolute error of the series approximation of the entropy."""

    points: tuple[tuple[int, float], ...]
    distribution: ProbVec


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(int(seed))


def _simplex_batch(rng: np.random.Generator, n: int, dim: int) -> np.ndarray:
    """n flat-Dirichlet points as rows: normalized iid exponentials."""
    e = rng.exponential(size=(n, dim))
    e /= e.sum(axis=1, keepdims=True)
    return e


def _channel_batch(rng: np.random.Generator, n: int, dim: int) -> np.ndarray:
    """n random square channels, each row uniform on the simplex."""
    e = rng.exponential(size=(n, dim, dim))
    e /= e.sum(axis=2, keepdims=True)
    return e


def sample_simplex(dim: int, rng_seed: int) -> ProbVec:
    """One point distributed uniformly on the (dim-1)-simplex."""
    if dim < 1:
        raise ValidationError(f"dim must be >= 1, got {dim}")
    row = _simplex_batch(_rng(rng_seed), 1, dim)[0]
    return ProbVec(row)


def verify_max_claim(dim: int, trials: int, seed: int) -> PropertyVerdict:
    """Check that no sampled f(p) = 1 - sum p_i^2 exceeds the uniform value.

    The claimed maximum is 1 - 1/dim, attained at the uniform distribution;
    a sample beating it by more than MAX_CLAIM_TOL refutes.
    """
    samples = _simplex_batch(_rng(seed), trials, dim)
    values = 1.0 - kernels.batch_sum_squares(samples)
    bound = 1.0 - 1.0 / dim
    worst = int(np.argmax(values))
    excess = float(values[worst] - bound)
    witness = None
    status = HOLDS
    if excess > MAX_CLAIM_TOL:
        status = REFUTED
        witness = {
            "trial": worst,
            "p": samples[worst].tolist(),
            "value": float(values[worst]),
            "bound": bound,
            "violation": excess,
        }
    return PropertyVerdict(CLAIM_MAX, status, trials, witness, int(seed))


def _cs_quantities(x: np.ndarray, y: np.ndarray):
    ip = kernels.batch_inner(x, y)
    sx = kernels.batch_sum_squares(x)
    sy = kernels.batch_sum_squares(y)
    defect = sx * sy - ip * ip
    max_diff = np.max(np.abs(x - y), axis=1)
    return ip, sx, sy, defect, max_diff


def verify_cauchy_schwarz(
    dim: int, trials: int, seed: int, threshold: float = DEFAULT_THRESHOLD
) -> PropertyVerdict:
    """Check <x, y>^2 <= (sum x^2)(sum y^2) on sampled (input, channel) pairs,
    plus the equality condition: defect within CS_EQUALITY_TOL exactly when
    the vectors agree within VECTOR_EQ_TOL.

    An identity-channel pair is always evaluated in addition to the random
    trials so the equality branch is exercised.
    """
    rng = _rng(seed)
    x = _simplex_batch(rng, trials, dim)
    channels = _channel_batch(rng, trials, dim)
    y = np.einsum("tm,tmn->tn", x, channels)

    # deterministic identity-channel candidate, evaluated first
    ident = np.eye(dim)
    cand_x = x[:1]
    cand_y = cand_x @ ident
    witness = _cs_violation(cand_x, cand_y, ident[None, :, :], ["identity-candidate"])
    if witness is None:
        witness = _cs_violation(x, y, channels, list(range(trials)))

    status = REFUTED if witness is not None else HOLDS
    return PropertyVerdict(CLAIM_CS, status, trials, witness, int(seed))


def _cs_violation(x, y, channels, trial_labels):
    ip, sx, sy, defect, max_diff = _cs_quantities(x, y)
    inequality_bad = -defect > CS_EQUALITY_TOL
    is_equal = np.abs(defect) <= CS_EQUALITY_TOL
    is_close = max_diff < VECTOR_EQ_TOL
    condition_bad = is_equal != is_close
    bad = inequality_bad | condition_bad
    if not np.any(bad):
        return None
    t = int(np.argmax(bad))
    kind = "inequality" if inequality_bad[t] else "equality-condition"
    violation = float(-defect[t]) if inequality_bad[t] else float(
        max(abs(defect[t]), max_diff[t])
    )
    return {
        "kind": kind,
        "trial": trial_labels[t],
        "p_x": x[t].tolist(),
        "channel": channels[t].tolist(),
        "p_y": y[t].tolist(),
        "inner_product": float(ip[t]),
        "sum_squares_x": float(sx[t]),
        "sum_squares_y": float(sy[t]),
        "defect": float(defect[t]),
        "max_abs_diff": float(max_diff[t]),
        "violation": violation,
    }


def _swap_permutation(dim: int) -> np.ndarray:
    q = np.eye(dim)
    q[[0, 1]] = q[[1, 0]]
    return q


def _triangle_candidate(dim: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Point mass through a swap permutation, twice: J(X;Y) = J(Y;Z) = 0 but
    J(X;Z) = 1."""
    p = np.zeros(dim)
    p[0] = 1.0
    q = _swap_permutation(dim)
    return p, q, q.copy()


def search_triangle_counterexample(
    dim: int,
    trials: int,
    seed: int,
    threshold: float = DEFAULT_THRESHOLD,
    constrain: str = "none",
) -> PropertyVerdict:
    """Search for violations of J(X;Y) + J(Y;Z) >= J(X;Z) over sampled chains
    X -> channel -> Y -> channel -> Z.

    The analytic permutation candidate is evaluated before the random trials
    (except under the stationary-input constraint, which it does not satisfy),
    so when the inequality fails the witness is reproducible in closed form.
    ``constrain`` narrows the sampling law: "identical-channels" reuses the
    first channel as the second, "stationary-input" sets the input to the
    invariant distribution of the first channel.  No claim is made about
    either restricted regime; they are exploration hooks.
    """
    if dim < 2:
        raise ValidationError(f"triangle search requires dim >= 2, got {dim}")
    if constrain not in CONSTRAIN_MODES:
        raise ValidationError(f"constrain must be one of {CONSTRAIN_MODES}")
    rng = _rng(seed)
    x = _simplex_batch(rng, trials, dim)
    q1 = _channel_batch(rng, trials, dim)
    q2 = q1 if constrain == "identical-channels" else _channel_batch(rng, trials, dim)
    if constrain == "stationary-input":
        for t in range(trials):
            x[t], _ = _solve_stationary(q1[t])

    witness = None
    if constrain != "stationary-input":
        cp, cq1, cq2 = _triangle_candidate(dim)
        witness = _triangle_violation(
            cp[None, :], cq1[None, :, :], cq2[None, :, :], threshold,
            source="analytic-candidate",
        )
    if witness is None:
        witness = _triangle_violation(x, q1, q2, threshold, source="sampled")

    status = REFUTED if witness is not None else HOLDS
    return PropertyVerdict(CLAIM_TRIANGLE, status, trials, witness, int(seed))


def _triangle_violation(x, q1, q2, threshold, source):
    y = np.einsum("tm,tmn->tn", x, q1)
    z = np.einsum("tm,tmn->tn", y, q2)
    j_xy = kernels.batch_inner(x, y)
    j_yz = kernels.batch_inner(y, z)
    j_xz = kernels.batch_inner(x, z)
    violation = j_xz - (j_xy + j_yz)
    t = int(np.argmax(violation))
    if violation[t] <= threshold:
        return None
    return {
        "source": source,
        "trial": t,
        "p_x": x[t].tolist(),
        "q1": q1[t].tolist(),
        "q2": q2[t].tolist(),
        "p_y": y[t].tolist(),
        "p_z": z[t].tolist(),
        "j_xy": float(j_xy[t]),
        "j_yz": float(j_yz[t]),
        "j_xz": float(j_xz[t]),
        "violation": float(violation[t]),
    }


def verify_j_symmetry(dim: int, trials: int, seed: int) -> PropertyVerdict:
    """Check bit-exact symmetry <x, y> == <y, x> on sampled channel pairs."""
    rng = _rng(seed)
    x = _simplex_batch(rng, trials, dim)
    channels = _channel_batch(rng, trials, dim)
    y = np.einsum("tm,tmn->tn", x, channels)
    forward = kernels.batch_inner(x, y)
    reverse = kernels.batch_inner(y, x)
    bad = forward != reverse
    witness = None
    status = HOLDS
    if np.any(bad):
        t = int(np.argmax(bad))
        status = REFUTED
        witness = {
            "trial": t,
            "p_x": x[t].tolist(),
            "channel": channels[t].tolist(),
            "forward": float(forward[t]),
            "reverse": float(reverse[t]),
            "violation": float(abs(forward[t] - reverse[t])),
        }
    return PropertyVerdict(CLAIM_J_SYMMETRY, status, trials, witness, int(seed))


def verify_j_nonnegativity(dim: int, trials: int, seed: int) -> PropertyVerdict:
    """Check J >= 0 on sampled channel pairs."""
    rng = _rng(seed)
    x = _simplex_batch(rng, trials, dim)
    channels = _channel_batch(rng, trials, dim)
    y = np.einsum("tm,tmn->tn", x, channels)
    values = kernels.batch_inner(x, y)
    t = int(np.argmin(values))
    witness = None
    status = HOLDS
    if values[t] < 0.0:
        status = REFUTED
        witness = {
            "trial": t,
            "p_x": x[t].tolist(),
            "channel": channels[t].tolist(),
            "value": float(values[t]),
            "violation": float(-values[t]),
        }
    return PropertyVerdict(CLAIM_J_NONNEG, status, trials, witness, int(seed))


def verify_j_self_measure(
    dim: int, trials: int, seed: int, threshold: float = DEFAULT_THRESHOLD
) -> PropertyVerdict:
    """Check the pseudo-metric axiom "the self-measure is zero".

    J of a distribution with itself (identity channel) equals sum p_i^2,
    which is at least 1/dim on the simplex, so the axiom fails on every
    sample; the witness records the first one.
    """
    samples = _simplex_batch(_rng(seed), trials, dim)
    self_measure = kernels.batch_sum_squares(samples)
    bad = self_measure > threshold
    witness = None
    status = HOLDS
    if np.any(bad):
        t = int(np.argmax(bad))
        status = REFUTED
        witness = {
            "trial": t,
            "p": samples[t].tolist(),
            "self_measure": float(self_measure[t]),
            "violation": float(self_measure[t]),
        }
    return PropertyVerdict(CLAIM_J_SELF, status, trials, witness, int(seed))


def approximation_error_curve(p: ProbVec, max_order: int) -> ErrorCurve:
    """Absolute error of each series order against the exact entropy in nats.

    Errors are clamped at zero once the partial sums reach the entropy to
    within rounding, which keeps the curve non-increasing and non-negative
    exactly, not just up to last-ulp noise.
    """
    max_order = int(max_order)
    if max_order < 1:
        raise ZeroOrderError(f"max_order must be >= 1, got {max_order}")
    sums = kernels.series_partial_sums(p.probs, max_order)
    exact = kernels.shannon_nats(p.probs)
    errors = np.maximum(exact - sums, 0.0)
    points = tuple((k + 1, float(errors[k])) for k in range(max_order))
    return ErrorCurve(points=points, distribution=p)


def replay_witness(verdict: PropertyVerdict) -> float:
    """Re-evaluate a refuting witness through the public operations.

    Returns the recomputed violation magnitude, for comparison against
    ``verdict.witness["violation"]``.
    """
    if verdict.witness is None:
        raise ValidationError("verdict has no witness to replay")
    w = verdict.witness
    cid = verdict.claim_id
    if cid == CLAIM_TRIANGLE:
        p_x = make_prob_vec(w["p_x"])
        ch1 = ChannelMatrix(w["q1"])
        ch2 = ChannelMatrix(w["q2"])
        p_y = push_forward(p_x, ch1)
        composite = ChannelMatrix(ch1.matrix @ ch2.matrix)
        j_xy = j_measure(p_x, ch1)
        j_yz = j_measure(p_y, ch2)
        j_xz = j_measure(p_x, composite)
        return j_xz - (j_xy + j_yz)
    if cid == CLAIM_MAX:
        p = make_prob_vec(w["p"])
        return gini_surrogate(p) - w["bound"]
    if cid == CLAIM_CS:
        p_x = make_prob_vec(w["p_x"])
        ch = ChannelMatrix(w["channel"])
        p_y = push_forward(p_x, ch)
        ip = kernels.inner(p_x.probs, p_y.probs)
        defect = (
            kernels.sum_squares(p_x.probs) * kernels.sum_squares(p_y.probs) - ip * ip
        )
        if w["kind"] == "inequality":
            return -defect
        return max(abs(defect), float(np.max(np.abs(p_x.probs - p_y.probs))))
    if cid == CLAIM_J_SYMMETRY:
        p_x = make_prob_vec(w["p_x"])
        p_y = push_forward(p_x, ChannelMatrix(w["channel"]))
        return abs(
            kernels.inner(p_x.probs, p_y.probs) - kernels.inner(p_y.probs, p_x.probs)
        )
    if cid == CLAIM_J_NONNEG:
        p_x = make_prob_vec(w["p_x"])
        return -j_measure(p_x, ChannelMatrix(w["channel"]))
    if cid == CLAIM_J_SELF:
        p = make_prob_vec(w["p"])
        ident = ChannelMatrix(np.eye(p.dim))
        return j_measure(p, ident)
    raise ValidationError(f"unknown claim id {cid!r}")


def error_curve_csv(curve: ErrorCurve) -> str:
    """CSV rendering of an error curve, header ``order,abs_error``."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["order", "abs_error"])
    for order, err in curve.points:
        writer.writerow([order, repr(err)])
    return buf.getvalue()


def verdict_to_dict(verdict: PropertyVerdict) -> dict:
    """JSON-ready form of a verdict."""
    return {
        "claim": verdict.claim_id,
        "status": verdict.status,
        "trials": verdict.trials,
        "seed": verdict.seed,
        "witness": verdict.witness,
    }


ClaimRunner = Callable[..., PropertyVerdict]

CLAIMS: dict[str, ClaimRunner] = {
    CLAIM_MAX: verify_max_claim,
    CLAIM_CS: verify_cauchy_schwarz,
    CLAIM_TRIANGLE: search_triangle_counterexample,
    CLAIM_J_SYMMETRY: verify_j_symmetry,
    CLAIM_J_NONNEG: verify_j_nonnegativity,
    CLAIM_J_SELF: verify_j_self_measure,
}


def run_claim(
    claim_id: str,
    dim: int,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    threshold: float = DEFAULT_THRESHOLD,
    constrain: str = "none",
) -> PropertyVerdict:
    """Dispatch one claim check by id (see :data:`CLAIMS` for the ids)."""
    if claim_id not in CLAIMS:
        known = ", ".join(sorted(CLAIMS))
        raise ValidationError(f"unknown claim {claim_id!r}; known claims: {known}")
    if claim_id == CLAIM_TRIANGLE:
        return search_triangle_counterexample(
            dim, trials, seed, threshold=threshold, constrain=constrain
        )
    if claim_id in (CLAIM_CS, CLAIM_J_SELF):
        return CLAIMS[claim_id](dim, trials, seed, threshold=threshold)
    return CLAIMS[claim_id](dim, trials, seed)
