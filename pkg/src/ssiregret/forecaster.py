"""Exponentially weighted forecaster with a side-information pseudo-expert.

"Exp3 with SSI" keeps one weight per expert plus one weight for the
maximum-likelihood (ML) estimate built from the side symbol, and predicts
the weighted mean of all advice.  Despite the name this is the
full-information exponentially weighted average forecaster, not the
bandit algorithm Exp3.

Two implementations are provided.  :func:`run` walks the protocol one step
at a time through :class:`ForecasterState`; :func:`run_vectorized` and
:func:`run_plain_ewa` compute all weights at once from cumulative losses in
the log domain.  The two routes agree to rounding error and are checked
against each other in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .channels import ChannelSpec
from .core import as_side_sequence, as_target_sequence, cumulative_loss
from .experts import ExpertClass

__all__ = [
    "optimal_eta",
    "ForecasterState",
    "Trajectory",
    "predict_step",
    "update_step",
    "run",
    "run_vectorized",
    "run_plain_ewa",
    "ewa_predictions",
    "resolve_eta",
]


def optimal_eta(N: int, n: int) -> float:
    """Learning rate sqrt(8 ln(N + 1) / n) for ``N`` experts plus the SSI adviser."""
    if N < 1 or n < 1:
        raise ValueError("N and n must be >= 1")
    return math.sqrt(8.0 * math.log(N + 1) / n)


def resolve_eta(eta, K: int, n: int) -> float:
    """Turn ``"auto"`` into sqrt(8 ln K / n) for ``K`` advisers; validate numbers."""
    if eta is None or eta == "auto":
        if K < 2:
            # a lone adviser is followed exactly whatever the rate
            return 1.0
        return math.sqrt(8.0 * math.log(K) / n)
    eta = float(eta)
    if not (eta > 0.0 and math.isfinite(eta)):
        raise ValueError(f"eta must be positive, got {eta!r}")
    return eta


@dataclass(frozen=True)
class ForecasterState:
    """Weights of the SSI adviser and the experts, stored as logarithms.

    Log storage keeps long runs free of underflow; ``w_ssi`` and
    ``w_expert`` return the actual weights.
    """

    log_w_ssi: float
    log_w_expert: tuple[float, ...]
    eta: float
    t: int = 0

    @classmethod
    def initial(cls, N: int, eta: float) -> "ForecasterState":
        return cls(0.0, (0.0,) * N, float(eta), 0)

    @classmethod
    def from_weights(cls, w_ssi: float, w_expert: Sequence[float], eta: float, t: int = 0):
        if w_ssi <= 0 or any(w <= 0 for w in w_expert):
            raise ValueError("weights must be positive")
        return cls(math.log(w_ssi), tuple(math.log(w) for w in w_expert), float(eta), t)

    @property
    def w_ssi(self) -> float:
        return math.exp(self.log_w_ssi)

    @property
    def w_expert(self) -> tuple[float, ...]:
        return tuple(math.exp(lw) for lw in self.log_w_expert)


def predict_step(state: ForecasterState, ssi_pred: float, expert_preds: Sequence[float]) -> float:
    """Weighted mean of the SSI advice and the expert advice."""
    logs = (state.log_w_ssi,) + tuple(state.log_w_expert)
    advice = (float(ssi_pred),) + tuple(float(a) for a in expert_preds)
    if len(advice) != len(logs):
        raise ValueError(f"expected {len(logs) - 1} expert predictions, got {len(advice) - 1}")
    top = max(logs)
    num = den = 0.0
    for lw, a in zip(logs, advice):
        w = math.exp(lw - top)
        num += w * a
        den += w
    # keep the mean inside the convex hull despite rounding
    return min(max(num / den, min(advice)), max(advice))


def update_step(state: ForecasterState, ssi_loss: float, expert_losses: Sequence[float]) -> ForecasterState:
    if len(expert_losses) != len(state.log_w_expert):
        raise ValueError("one loss per expert is required")
    eta = state.eta
    return ForecasterState(
        state.log_w_ssi - eta * ssi_loss,
        tuple(lw - eta * loss for lw, loss in zip(state.log_w_expert, expert_losses)),
        eta,
        state.t + 1,
    )


@dataclass(frozen=True)
class Trajectory:
    predictions: np.ndarray = field(repr=False)
    forecaster_loss: float
    ssi_loss: float
    expert_losses: np.ndarray
    regret: float
    eta: float
    side: np.ndarray | None = field(default=None, repr=False)
    ssi_predictions: np.ndarray | None = field(default=None, repr=False)

    @property
    def best_expert_loss(self) -> float:
        return float(self.expert_losses.min())


def _prepare(channel, experts, target, rng, side):
    target = as_target_sequence(target)
    if side is None:
        if rng is None:
            raise ValueError("either rng or an explicit side sequence is required")
        side = channel.sample_sequence(target, rng)
    side = as_side_sequence(side, n=target.size)
    ml = channel.ml_estimates(side)
    advice = experts.advice(target.size)
    return target, side, ml, advice


def _losses(advice: np.ndarray, target: np.ndarray) -> np.ndarray:
    return np.array([cumulative_loss(np.ascontiguousarray(advice[:, k]), target)
                     for k in range(advice.shape[1])])


def _trajectory(predictions, target, ml, expert_advice, eta, side) -> Trajectory:
    expert_losses = _losses(expert_advice, target)
    f_loss = cumulative_loss(predictions, target)
    ssi_loss = cumulative_loss(ml, target) if ml is not None else float("nan")
    return Trajectory(
        predictions=predictions,
        forecaster_loss=f_loss,
        ssi_loss=ssi_loss,
        expert_losses=expert_losses,
        regret=f_loss - float(expert_losses.min()),
        eta=eta,
        side=side,
        ssi_predictions=ml,
    )


def run(channel: ChannelSpec, experts: ExpertClass, target, eta="auto",
        rng: np.random.Generator | None = None, side=None) -> Trajectory:
    """Play the forecasting protocol step by step.

    The side sequence is drawn up front from ``rng`` (or passed in via
    ``side``); since it depends only on the target this is equivalent to
    revealing one side symbol per round.
    """
    target, side, ml, advice = _prepare(channel, experts, target, rng, side)
    n, N = advice.shape
    eta = resolve_eta(eta, N + 1, n)
    state = ForecasterState.initial(N, eta)
    preds = np.empty(n)
    for t in range(n):
        row = advice[t]
        preds[t] = predict_step(state, ml[t], row)
        x = target[t]
        state = update_step(state, abs(ml[t] - x), [abs(a - x) for a in row])
    return _trajectory(preds, target, ml, advice, eta, side)


def ewa_predictions(advice: np.ndarray, target: np.ndarray, eta: float) -> np.ndarray:
    """Exponentially weighted average predictions for a full advice matrix.

    ``advice`` has shape ``(..., n, K)``; leading axes are independent
    problems sharing the same ``target`` of length ``n``.  The weight of
    adviser ``k`` at step ``t`` is exp(-eta * loss of ``k`` over steps < t).
    """
    advice = np.asarray(advice, dtype=np.float64)
    losses = np.abs(advice - target[:, None])
    past = np.cumsum(losses, axis=-2) - losses
    logw = -eta * past
    logw -= logw.max(axis=-1, keepdims=True)
    w = np.exp(logw)
    preds = (w * advice).sum(axis=-1) / w.sum(axis=-1)
    return np.clip(preds, advice.min(axis=-1), advice.max(axis=-1))


def run_vectorized(channel: ChannelSpec, experts: ExpertClass, target, eta="auto",
                   rng: np.random.Generator | None = None, side=None) -> Trajectory:
    """Same forecaster as :func:`run`, computed from cumulative losses in one pass."""
    target, side, ml, advice = _prepare(channel, experts, target, rng, side)
    n, N = advice.shape
    eta = resolve_eta(eta, N + 1, n)
    full = np.column_stack([ml, advice])
    preds = ewa_predictions(full, target, eta)
    return _trajectory(preds, target, ml, advice, eta, side)


def run_plain_ewa(experts: ExpertClass, target, eta="auto") -> Trajectory:
    """Baseline forecaster over the experts alone (no side information)."""
    target = as_target_sequence(target)
    advice = experts.advice(target.size)
    n, N = advice.shape
    if N < 1:
        raise ValueError("need at least one expert")
    eta = resolve_eta(eta, N, n)
    preds = ewa_predictions(advice, target, eta)
    return _trajectory(preds, target, None, advice, eta, None)
