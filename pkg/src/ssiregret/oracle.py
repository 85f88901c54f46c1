"""Exact and independent computations used to check the forecaster and the bounds.

Exact expectations enumerate every side sequence of a finite-alphabet
channel; the minimax value additionally enumerates every binary target.
Enumeration is exponential, so horizons are capped (``max_n``); raising a
cap is allowed but logs a warning.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .channels import AdditiveGaussian, BinarySymmetric, ChannelSpec, FiniteConditional
from .core import as_target_sequence
from .experts import ExpertClass
from .forecaster import ForecasterState, ewa_predictions, predict_step, resolve_eta, update_step
from .special import normal_pdf

__all__ = [
    "ExactRegretResult",
    "exact_expected_regret",
    "exact_expected_regret_detail",
    "minimax_regret_bruteforce",
    "greedy_adversary",
    "xi_star_oracle",
    "FIXED_TARGET_MAX_N",
    "MINIMAX_MAX_N",
]

log = logging.getLogger(__name__)

FIXED_TARGET_MAX_N = 14
MINIMAX_MAX_N = 10


@dataclass(frozen=True)
class ExactRegretResult:
    expected_regret: float
    worst_target: np.ndarray | None
    enumerated_paths: int
    total_probability: float
    expected_ssi_loss: float = float("nan")
    best_expert_loss: float = float("nan")


def _finite_matrix(channel: ChannelSpec) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(channel, AdditiveGaussian) or not getattr(channel, "is_finite", False):
        raise TypeError("exact enumeration needs a finite side alphabet; use Monte Carlo for Gaussian channels")
    alphabet = np.asarray(channel.side_alphabet if isinstance(channel, FiniteConditional) else (0.0, 1.0))
    return alphabet, np.asarray(channel.transition_matrix())


def _check_cap(n: int, max_n: int, default: int) -> None:
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > max_n:
        raise ValueError(f"n={n} exceeds the enumeration cap max_n={max_n}")
    if max_n > default and n > default:
        log.warning("enumerating beyond the default cap (n=%d > %d); this may be slow", n, default)


class _SideEnumeration:
    """All side sequences of length n with their ML advice, built once per (channel, n)."""

    def __init__(self, channel: ChannelSpec, n: int):
        alphabet, matrix = _finite_matrix(channel)
        A = alphabet.size
        self.idx = np.array(list(itertools.product(range(A), repeat=n)), dtype=np.intp).reshape(-1, n)
        self.ml = channel.ml_estimates(alphabet)[self.idx]
        self.matrix = matrix

    @property
    def count(self) -> int:
        return self.idx.shape[0]

    def probabilities(self, target: np.ndarray) -> np.ndarray:
        rows = self.matrix[target.astype(np.intp)]  # (n, A)
        per_step = rows[np.arange(target.size), self.idx]  # (paths, n)
        return per_step.prod(axis=1)


def _expected_regret(enum: _SideEnumeration, experts: ExpertClass, target: np.ndarray, eta):
    n = target.size
    advice = experts.advice(n)
    N = advice.shape[1]
    eta = resolve_eta(eta, N + 1, n)
    probs = enum.probabilities(target)
    full = np.concatenate([enum.ml[:, :, None], np.broadcast_to(advice, (enum.count, n, N))], axis=2)
    preds = ewa_predictions(full, target, eta)
    f_loss = np.abs(preds - target).sum(axis=1)
    ssi_loss = np.abs(enum.ml - target).sum(axis=1)
    best = float(np.abs(advice - target[:, None]).sum(axis=0).min())
    total = math.fsum(probs)
    expected = math.fsum(probs * f_loss) - best * total
    return expected, total, math.fsum(probs * ssi_loss), best


def exact_expected_regret_detail(channel: ChannelSpec, experts: ExpertClass, target, eta="auto",
                                 max_n: int = FIXED_TARGET_MAX_N) -> ExactRegretResult:
    """Exact expectation over side sequences of the regret on one target."""
    target = as_target_sequence(target)
    _check_cap(target.size, max_n, FIXED_TARGET_MAX_N)
    enum = _SideEnumeration(channel, target.size)
    expected, total, ssi, best = _expected_regret(enum, experts, target, eta)
    return ExactRegretResult(expected, target, enum.count, total, ssi, best)


def exact_expected_regret(channel: ChannelSpec, experts: ExpertClass, target, eta="auto",
                          max_n: int = FIXED_TARGET_MAX_N) -> float:
    return exact_expected_regret_detail(channel, experts, target, eta, max_n).expected_regret


def minimax_regret_bruteforce(channel: ChannelSpec, experts: ExpertClass, n: int, eta="auto",
                              max_n: int = MINIMAX_MAX_N) -> ExactRegretResult:
    """Largest exact expected regret of the forecaster over all 2**n binary targets.

    Targets are visited in lexicographic order and the first maximiser is
    kept, so the result does not depend on scheduling.
    """
    _check_cap(n, max_n, MINIMAX_MAX_N)
    enum = _SideEnumeration(channel, n)
    best_value = -math.inf
    worst = None
    min_total = math.inf
    max_total = -math.inf
    for bits in itertools.product((0.0, 1.0), repeat=n):
        target = np.array(bits)
        value, total, _, _ = _expected_regret(enum, experts, target, eta)
        min_total = min(min_total, total)
        max_total = max(max_total, total)
        if value > best_value:
            best_value, worst = value, target
    worst.setflags(write=False)
    total = min_total if abs(min_total - 1.0) > abs(max_total - 1.0) else max_total
    return ExactRegretResult(best_value, worst, enum.count * 2 ** n, total)


def greedy_adversary(channel: ChannelSpec, experts: ExpertClass, n: int, eta="auto",
                     rng: np.random.Generator | None = None, tol: float = 1e-12) -> np.ndarray:
    """Build a target one step at a time by maximising the expected excess loss.

    At step t each candidate bit x is scored by the expected increase of
    the regret: E[|p_t(S_t) - x|] minus the increase of the best expert's
    cumulative loss, min_k (L_k + |f_k - x|) - min_k L_k.  The expectation
    runs over the side symbol drawn given x with the forecaster's current
    weights.  Ties (within ``tol``) go to 1.  After choosing x a side
    symbol is sampled from ``rng`` to advance the forecaster's weights.
    This is a one-step lookahead and need not find the worst-case target.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng() if rng is None else rng
    N = experts.size
    eta = resolve_eta(eta, N + 1, n)
    state = ForecasterState.initial(N, eta)
    target = np.empty(n)
    cum = [0.0] * N
    for t in range(n):
        row = [experts.predict(k, t) for k in range(N)]
        best_so_far = min(cum)
        scores = {}
        for x in (0.0, 1.0):
            dist = channel.ml_distribution(x)
            expected = sum(p * abs(predict_step(state, m, row) - x) for m, p in dist.items())
            best_after = min(c + abs(a - x) for c, a in zip(cum, row))
            scores[x] = expected - (best_after - best_so_far)
        x = 1.0 if scores[1.0] >= scores[0.0] - tol else 0.0
        target[t] = x
        losses = [abs(a - x) for a in row]
        cum = [c + loss for c, loss in zip(cum, losses)]
        ml = float(channel.ml_estimates(np.array([channel.sample(x, rng)]))[0])
        state = update_step(state, abs(ml - x), losses)
    target.setflags(write=False)
    return target


def xi_star_oracle(channel: ChannelSpec, epsabs: float = 1e-12) -> float:
    """Minimum one-step expected absolute loss for a fair-coin target, computed directly.

    For each side value the loss of a prediction p is linear in p, so the
    minimum over [0, 1] is attained at p = 0 or p = 1.  Finite channels sum
    the pointwise minimum of the joint masses; the Gaussian channel
    integrates the pointwise minimum of the joint densities with adaptive
    quadrature, split at the crossing point 1/2.
    """
    if isinstance(channel, AdditiveGaussian):
        s = channel.sigma

        def integrand(x):
            # predict 1: loss when target is 0; predict 0: loss when target is 1
            return min(0.5 * normal_pdf(x, 0.0, s), 0.5 * normal_pdf(x, 1.0, s))

        left, _ = integrate.quad(integrand, -np.inf, 0.5, epsabs=epsabs, epsrel=1e-12, limit=200)
        right, _ = integrate.quad(integrand, 0.5, np.inf, epsabs=epsabs, epsrel=1e-12, limit=200)
        return left + right
    if isinstance(channel, (BinarySymmetric, FiniteConditional)):
        matrix = np.asarray(channel.transition_matrix())
        total = 0.0
        for j in range(matrix.shape[1]):
            joint0, joint1 = 0.5 * matrix[0, j], 0.5 * matrix[1, j]
            total += min(abs(p - 0.0) * joint0 + abs(p - 1.0) * joint1 for p in (0.0, 0.5, 1.0))
        return total
    raise TypeError(f"unsupported channel {channel!r}")
