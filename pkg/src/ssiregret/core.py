"""Outcomes, predictions, sequences and the absolute loss.

Outcomes are binary (0 or 1), predictions live in the interval [0, 1].
Sequences are plain 1-D float64 numpy arrays; the helpers below validate
and freeze them.
"""

from __future__ import annotations

import os
from typing import Iterable

import numpy as np

__all__ = [
    "check_outcome",
    "check_prediction",
    "as_target_sequence",
    "as_side_sequence",
    "as_predictions",
    "absolute_loss",
    "cumulative_loss",
    "load_target_sequence",
]


def check_outcome(b: float) -> float:
    b = float(b)
    if b != 0.0 and b != 1.0:
        raise ValueError(f"outcome must be 0 or 1, got {b!r}")
    return b


def check_prediction(a: float) -> float:
    a = float(a)
    if not 0.0 <= a <= 1.0:
        raise ValueError(f"prediction must lie in [0, 1], got {a!r}")
    return a


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def as_target_sequence(values: Iterable[float], n: int | None = None) -> np.ndarray:
    """Validate a binary target sequence and return it as a read-only array.

    If ``n`` is given the sequence must have exactly that length.
    """
    arr = np.array(values, dtype=np.float64).ravel()
    if arr.size == 0:
        raise ValueError("target sequence must be non-empty")
    if n is not None and arr.size != n:
        raise ValueError(f"target sequence has length {arr.size}, expected {n}")
    if not np.all((arr == 0.0) | (arr == 1.0)):
        raise ValueError("target sequence entries must be 0 or 1")
    return _frozen(arr)


def as_side_sequence(values: Iterable[float], n: int | None = None) -> np.ndarray:
    arr = np.array(values, dtype=np.float64).ravel()
    if n is not None and arr.size != n:
        raise ValueError(f"side sequence has length {arr.size}, expected {n}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("side sequence entries must be finite")
    return _frozen(arr)


def as_predictions(values: Iterable[float]) -> np.ndarray:
    arr = np.array(values, dtype=np.float64)
    if arr.size and not (np.all(arr >= 0.0) and np.all(arr <= 1.0)):
        raise ValueError("predictions must lie in [0, 1]")
    return arr


def absolute_loss(a: float, b: float) -> float:
    """``|a - b|`` for a prediction ``a`` in [0, 1] and an outcome ``b`` in {0, 1}."""
    return abs(check_prediction(a) - check_outcome(b))


def cumulative_loss(predictions: Iterable[float], targets: Iterable[float]) -> float:
    """Sum of per-step absolute losses between two equal-length sequences.

    Both arguments may be any sequences over [0, 1], which makes the
    function symmetric in its arguments.
    """
    a = as_predictions(predictions).ravel()
    b = as_predictions(targets).ravel()
    if a.shape != b.shape:
        raise ValueError(f"length mismatch: {a.size} vs {b.size}")
    return float(np.abs(a - b).sum())


def load_target_sequence(path: str | os.PathLike, n: int | None = None) -> np.ndarray:
    """Read a target sequence stored one character ('0' or '1') per line."""
    values = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line not in ("0", "1"):
                raise ValueError(f"{path}:{lineno}: expected '0' or '1', got {line!r}")
            values.append(float(line))
    return as_target_sequence(values, n=n)
