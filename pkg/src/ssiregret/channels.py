"""Memoryless side-information channels P(side | target).

Three channel families are supported:

* :class:`BinarySymmetric` flips the target bit with probability ``delta``.
* :class:`AdditiveGaussian` adds N(0, sigma^2) noise to the target bit.
* :class:`FiniteConditional` is an arbitrary 2 x A stochastic matrix over a
  finite side alphabet.

Every channel exposes the maximum-likelihood (ML) estimate of the target
from one side symbol and the per-step expected loss of that estimate.
When both targets are equally likely the ML estimate is 0.5.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .core import as_target_sequence, check_outcome
from .special import normal_cdf, normal_pdf

__all__ = [
    "BinarySymmetric",
    "AdditiveGaussian",
    "FiniteConditional",
    "ChannelSpec",
    "sample",
    "ml_estimate",
    "expected_ml_loss_per_step",
    "c_s",
    "likelihood",
    "load_finite_channel",
]

TIE = 0.5


@dataclass(frozen=True)
class BinarySymmetric:
    """Binary symmetric channel with forward flip probability ``delta``."""

    delta: float

    def __post_init__(self):
        d = float(self.delta)
        if not 0.0 <= d <= 1.0:
            raise ValueError(f"delta must lie in [0, 1], got {self.delta!r}")
        object.__setattr__(self, "delta", d)

    @property
    def side_alphabet(self) -> tuple[float, ...]:
        return (0.0, 1.0)

    @property
    def is_finite(self) -> bool:
        return True

    def transition_matrix(self) -> np.ndarray:
        d = self.delta
        return np.array([[1.0 - d, d], [d, 1.0 - d]])

    def likelihood(self, x_side: float, x_target: float) -> float:
        x_target = check_outcome(x_target)
        if x_side not in (0.0, 1.0):
            return 0.0
        return 1.0 - self.delta if x_side == x_target else self.delta

    def sample(self, x_target: float, rng: np.random.Generator) -> float:
        x_target = check_outcome(x_target)
        return 1.0 - x_target if rng.random() < self.delta else x_target

    def sample_sequence(self, target, rng: np.random.Generator) -> np.ndarray:
        t = np.asarray(target, dtype=np.float64)
        flips = rng.random(t.size) < self.delta
        return np.where(flips, 1.0 - t, t)

    def ml_estimates(self, side) -> np.ndarray:
        s = np.asarray(side, dtype=np.float64)
        if np.any((s != 0.0) & (s != 1.0)):
            raise ValueError("BSC side symbols must be 0 or 1")
        if self.delta < 0.5:
            return s.copy()
        if self.delta > 0.5:
            return 1.0 - s
        return np.full_like(s, TIE)

    def ml_distribution(self, x_target: float) -> dict[float, float]:
        """Distribution of the ML estimate when the true target is ``x_target``."""
        x = check_outcome(x_target)
        d = self.delta
        if d == 0.5:
            return {TIE: 1.0}
        if d < 0.5:
            return {x: 1.0 - d, 1.0 - x: d}
        return {x: d, 1.0 - x: 1.0 - d}

    def expected_ml_loss_per_step(self) -> float:
        return min(self.delta, 1.0 - self.delta)


@dataclass(frozen=True)
class AdditiveGaussian:
    """Side symbol = target + N(0, sigma^2); the side alphabet is the real line."""

    sigma: float

    def __post_init__(self):
        s = float(self.sigma)
        if not (s > 0.0 and np.isfinite(s)):
            raise ValueError(f"sigma must be a positive finite real, got {self.sigma!r}")
        object.__setattr__(self, "sigma", s)

    @property
    def is_finite(self) -> bool:
        return False

    def likelihood(self, x_side: float, x_target: float) -> float:
        return normal_pdf(float(x_side), check_outcome(x_target), self.sigma)

    def sample(self, x_target: float, rng: np.random.Generator) -> float:
        return check_outcome(x_target) + self.sigma * rng.standard_normal()

    def sample_sequence(self, target, rng: np.random.Generator) -> np.ndarray:
        t = np.asarray(target, dtype=np.float64)
        return t + self.sigma * rng.standard_normal(t.size)

    def ml_estimates(self, side) -> np.ndarray:
        s = np.asarray(side, dtype=np.float64)
        # the boundary 1/2 is equidistant from both means; it maps to 1
        return np.where(s >= 0.5, 1.0, 0.0)

    def ml_distribution(self, x_target: float) -> dict[float, float]:
        x = check_outcome(x_target)
        p1 = normal_cdf((x - 0.5) / self.sigma)
        return {1.0: p1, 0.0: 1.0 - p1}

    def expected_ml_loss_per_step(self) -> float:
        return normal_cdf(-1.0 / (2.0 * self.sigma))


@dataclass(frozen=True)
class FiniteConditional:
    """Finite-alphabet channel given by the rows P(side | target=0), P(side | target=1)."""

    side_alphabet: tuple[float, ...]
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        alphabet = tuple(float(s) for s in self.side_alphabet)
        if not alphabet:
            raise ValueError("side alphabet must be non-empty")
        if len(set(alphabet)) != len(alphabet):
            raise ValueError("side alphabet symbols must be distinct")
        m = np.array(self.matrix, dtype=np.float64)
        if m.shape != (2, len(alphabet)):
            raise ValueError(f"matrix must have shape (2, {len(alphabet)}), got {m.shape}")
        if np.any(m < 0.0):
            raise ValueError("transition probabilities must be non-negative")
        if np.any(np.abs(m.sum(axis=1) - 1.0) > 1e-12):
            raise ValueError("each matrix row must sum to 1 (tolerance 1e-12)")
        m.setflags(write=False)
        object.__setattr__(self, "side_alphabet", alphabet)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(alphabet)})

    def __eq__(self, other):
        if not isinstance(other, FiniteConditional):
            return NotImplemented
        return self.side_alphabet == other.side_alphabet and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash((self.side_alphabet, self.matrix.tobytes()))

    @property
    def is_finite(self) -> bool:
        return True

    def transition_matrix(self) -> np.ndarray:
        return self.matrix

    def symbol_index(self, x_side: float) -> int:
        try:
            return self._index[float(x_side)]
        except KeyError:
            raise ValueError(f"{x_side!r} is not in the side alphabet {self.side_alphabet}") from None

    def likelihood(self, x_side: float, x_target: float) -> float:
        x = int(check_outcome(x_target))
        idx = self._index.get(float(x_side))
        return 0.0 if idx is None else float(self.matrix[x, idx])

    def sample(self, x_target: float, rng: np.random.Generator) -> float:
        x = int(check_outcome(x_target))
        return self.side_alphabet[rng.choice(len(self.side_alphabet), p=self.matrix[x])]

    def sample_sequence(self, target, rng: np.random.Generator) -> np.ndarray:
        t = np.asarray(target, dtype=np.float64).astype(int)
        cdf = np.cumsum(self.matrix, axis=1)
        cdf[:, -1] = 1.0
        u = rng.random(t.size)
        idx = np.empty(t.size, dtype=int)
        for x in (0, 1):
            mask = t == x
            idx[mask] = np.searchsorted(cdf[x], u[mask], side="right")
        return np.asarray(self.side_alphabet)[idx]

    def _ml_table(self) -> np.ndarray:
        p0, p1 = self.matrix
        return np.where(p1 > p0, 1.0, np.where(p0 > p1, 0.0, TIE))

    def ml_estimates(self, side) -> np.ndarray:
        s = np.asarray(side, dtype=np.float64)
        idx = np.vectorize(self.symbol_index, otypes=[int])(s) if s.size else s.astype(int)
        return self._ml_table()[idx]

    def ml_distribution(self, x_target: float) -> dict[float, float]:
        x = int(check_outcome(x_target))
        dist: dict[float, float] = {}
        for est, p in zip(self._ml_table(), self.matrix[x]):
            if p > 0.0:
                dist[float(est)] = dist.get(float(est), 0.0) + float(p)
        return dist

    def expected_ml_loss_per_step(self) -> float:
        # worst case over the two targets so C_S(n) holds for every target sequence
        table = self._ml_table()
        per_target = [float(np.dot(self.matrix[x], np.abs(table - x))) for x in (0, 1)]
        return max(per_target)


ChannelSpec = Union[BinarySymmetric, AdditiveGaussian, FiniteConditional]


def sample(channel: ChannelSpec, x_target: float, rng: np.random.Generator) -> float:
    """Draw one side symbol from ``P(. | x_target)``."""
    return channel.sample(x_target, rng)


def sample_sequence(channel: ChannelSpec, target, rng: np.random.Generator) -> np.ndarray:
    return channel.sample_sequence(as_target_sequence(target), rng)


def ml_estimate(channel: ChannelSpec, x_side: float) -> float:
    """Maximum-likelihood estimate of the target bit from one side symbol."""
    return float(channel.ml_estimates(np.array([x_side], dtype=np.float64))[0])


def expected_ml_loss_per_step(channel: ChannelSpec) -> float:
    return channel.expected_ml_loss_per_step()


def c_s(channel: ChannelSpec, n: int) -> float:
    """Upper bound on the expected cumulative loss of the ML sequence over ``n`` steps."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return n * channel.expected_ml_loss_per_step()


def likelihood(channel: ChannelSpec, x_side: float, x_target: float) -> float:
    return channel.likelihood(x_side, x_target)


def load_finite_channel(path: str | os.PathLike) -> FiniteConditional:
    """Read a finite channel file.

    Line 1 holds the side alphabet, lines 2 and 3 the rows P(side | 0) and
    P(side | 1), all whitespace separated.  Blank lines and lines starting
    with '#' are skipped.
    """
    with open(path, encoding="utf-8") as fh:
        lines = [ln.split() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
    if len(lines) != 3:
        raise ValueError(f"{path}: expected 3 non-empty lines, found {len(lines)}")
    try:
        alphabet = [float(v) for v in lines[0]]
        rows = [[float(v) for v in ln] for ln in lines[1:]]
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from None
    return FiniteConditional(tuple(alphabet), np.array(rows))
