"""Expert classes and the best-expert loss quantities.

Experts are indexed from 0 and time steps from 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Union

import numpy as np

from .core import as_predictions, as_target_sequence, cumulative_loss

__all__ = [
    "ConstantExperts",
    "FixedSequenceExperts",
    "ExpertClass",
    "predict",
    "expert_losses",
    "best_expert_cumulative_loss",
    "l_star_constant",
    "l_star_bruteforce",
    "c_f",
    "parse_constant_experts",
]

BRUTEFORCE_MAX_N = 12


@dataclass(frozen=True)
class ConstantExperts:
    """Each expert predicts the same value at every step."""

    values: tuple[float, ...]

    def __post_init__(self):
        vals = tuple(float(v) for v in np.atleast_1d(as_predictions(self.values)))
        if not vals:
            raise ValueError("an expert class needs at least one expert")
        object.__setattr__(self, "values", vals)

    @property
    def size(self) -> int:
        return len(self.values)

    horizon = None

    def predict(self, theta: int, t: int, history=None) -> float:
        _check_theta(theta, self.size)
        return self.values[theta]

    def advice(self, n: int) -> np.ndarray:
        """The ``(n, N)`` matrix of predictions."""
        return np.broadcast_to(np.asarray(self.values), (n, self.size)).copy()

    def is_flip_closed(self, tol: float = 1e-12) -> bool:
        vals = np.asarray(self.values)
        return all(np.any(np.abs(vals - (1.0 - v)) <= tol) for v in vals)


@dataclass(frozen=True)
class FixedSequenceExperts:
    """Experts given by stored prediction sequences, one row per expert."""

    sequences: np.ndarray

    def __post_init__(self):
        seqs = np.array(self.sequences, dtype=np.float64)
        if seqs.ndim != 2 or seqs.shape[0] < 1 or seqs.shape[1] < 1:
            raise ValueError("sequences must be a non-empty (N, n) array")
        as_predictions(seqs)
        seqs.setflags(write=False)
        object.__setattr__(self, "sequences", seqs)

    def __eq__(self, other):
        if not isinstance(other, FixedSequenceExperts):
            return NotImplemented
        return np.array_equal(self.sequences, other.sequences)

    def __hash__(self):
        return hash(self.sequences.tobytes())

    @property
    def size(self) -> int:
        return self.sequences.shape[0]

    @property
    def horizon(self) -> int:
        return self.sequences.shape[1]

    def predict(self, theta: int, t: int, history=None) -> float:
        _check_theta(theta, self.size)
        if not 0 <= t < self.horizon:
            raise IndexError(f"time step {t} outside [0, {self.horizon})")
        return float(self.sequences[theta, t])

    def advice(self, n: int) -> np.ndarray:
        if n != self.horizon:
            raise ValueError(f"expert sequences have length {self.horizon}, horizon is {n}")
        return self.sequences.T.copy()


ExpertClass = Union[ConstantExperts, FixedSequenceExperts]


def _check_theta(theta: int, size: int) -> None:
    if not 0 <= theta < size:
        raise IndexError(f"expert index {theta} outside [0, {size})")


def predict(experts: ExpertClass, theta: int, t: int, history=None) -> float:
    """Prediction of expert ``theta`` at step ``t``; ``history`` is accepted but unused."""
    return experts.predict(theta, t, history)


def expert_losses(experts: ExpertClass, target) -> np.ndarray:
    """Cumulative loss of every expert against ``target``."""
    target = as_target_sequence(target)
    advice = experts.advice(target.size)
    return np.array([cumulative_loss(np.ascontiguousarray(advice[:, k]), target)
                     for k in range(experts.size)])


def best_expert_cumulative_loss(experts: ExpertClass, target) -> float:
    return float(expert_losses(experts, target).min())


def l_star_constant(experts: ConstantExperts, n: int) -> float:
    """Infimum over binary targets of the best constant expert's loss.

    The loss of expert ``c`` on a target with ``k`` ones is linear in ``k``,
    so the infimum sits at the all-zeros or all-ones target.
    """
    if not isinstance(experts, ConstantExperts):
        raise TypeError("closed-form L* is only available for constant experts")
    if n < 1:
        raise ValueError("n must be >= 1")
    return n * c_f(experts)


def c_f(experts: ConstantExperts) -> float:
    """Per-step slope of L*(n) for a constant class."""
    if not isinstance(experts, ConstantExperts):
        raise TypeError("c_f is only defined for constant experts")
    return min(min(c, 1.0 - c) for c in experts.values)


def l_star_bruteforce(experts: ExpertClass, n: int, max_n: int = BRUTEFORCE_MAX_N) -> float:
    """L*(n) by enumerating all 2**n binary targets."""
    if n > max_n:
        raise ValueError(f"brute force over 2**{n} targets exceeds max_n={max_n}")
    advice = experts.advice(n)
    targets = np.array(list(itertools.product((0.0, 1.0), repeat=n)))
    losses = np.abs(advice[None, :, :] - targets[:, :, None]).sum(axis=1)
    return float(losses.min())


def parse_constant_experts(text: str) -> ConstantExperts:
    """Parse ``"0.1,0.7"`` into a constant expert class."""
    try:
        vals = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ValueError(f"cannot parse expert list {text!r}") from None
    return ConstantExperts(tuple(vals))
