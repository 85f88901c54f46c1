"""Closed-form upper and lower bounds on the minimax expected regret.

All logarithms are natural.  Every bound has the shape
``sqrt((n / 2) * ln(N + 1)) + correction`` and is returned as a
:class:`BoundReport` keeping both parts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .channels import AdditiveGaussian, BinarySymmetric, ChannelSpec, FiniteConditional
from .special import normal_cdf

__all__ = [
    "BoundReport",
    "sqrt_term",
    "upper_bound",
    "lower_bound",
    "xi_star",
    "normal_cdf",
    "corollary1_upper",
    "corollary2_lower",
    "corollary3_upper",
    "corollary4_lower",
]


@dataclass(frozen=True)
class BoundReport:
    kind: str  # "upper" or "lower"
    provenance: str
    sqrt_term: float
    correction: float
    total: float

    def to_text(self) -> str:
        """Flat ``key=value`` record, one field per line."""
        return "\n".join([
            f"kind={self.kind}",
            f"provenance={self.provenance}",
            f"sqrt_term={self.sqrt_term!r}",
            f"correction={self.correction!r}",
            f"total={self.total!r}",
        ]) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "BoundReport":
        fields = {}
        for line in text.splitlines():
            if line.strip():
                key, _, value = line.partition("=")
                fields[key.strip()] = value.strip()
        return cls(
            kind=fields["kind"],
            provenance=fields["provenance"],
            sqrt_term=float(fields["sqrt_term"]),
            correction=float(fields["correction"]),
            total=float(fields["total"]),
        )


def _report(kind: str, provenance: str, root: float, correction: float) -> BoundReport:
    return BoundReport(kind, provenance, root, correction, root + correction)


def sqrt_term(n: int, N: int) -> float:
    if n < 1 or N < 1:
        raise ValueError("n and N must be >= 1")
    return math.sqrt(n / 2.0 * math.log(N + 1))


def upper_bound(n: int, N: int, C_S: float, L_star: float, provenance: str = "theorem1") -> BoundReport:
    """sqrt((n/2) ln(N+1)) + min(C_S - L*, 0)."""
    if C_S < 0 or L_star < 0:
        raise ValueError("C_S and L_star must be non-negative")
    return _report("upper", provenance, sqrt_term(n, N), min(C_S - L_star, 0.0))


def lower_bound(n: int, N: int, xi_star: float, provenance: str = "theorem2") -> BoundReport:
    """sqrt((n/2) ln(N+1)) + (xi* - 1/2) n."""
    if not 0.0 <= xi_star <= 0.5:
        raise ValueError(f"xi_star must lie in [0, 1/2], got {xi_star!r}")
    # written as xi* n - n/2 so that it rounds the same way as the upper correction C_S - c_f n
    return _report("lower", provenance, sqrt_term(n, N), xi_star * n - 0.5 * n)


def xi_star(channel: ChannelSpec) -> float:
    """Smallest expected absolute loss of a one-step predictor of a fair coin seen through ``channel``.

    For finite channels this depends on the uniform prior on the target,
    not only on the channel: with posterior q(s) = P(target=1 | s) the
    optimal prediction is the posterior majority and the loss is
    sum_s P(s) min(q(s), 1 - q(s)).
    """
    if isinstance(channel, BinarySymmetric):
        return min(channel.delta, 1.0 - channel.delta)
    if isinstance(channel, AdditiveGaussian):
        return normal_cdf(-1.0 / (2.0 * channel.sigma))
    if isinstance(channel, FiniteConditional):
        p0, p1 = channel.matrix
        total = 0.0
        for a, b in zip(p0, p1):
            marginal = 0.5 * (a + b)
            if marginal > 0.0:
                q = 0.5 * b / marginal
                total += marginal * min(q, 1.0 - q)
        return total
    raise TypeError(f"unsupported channel {channel!r}")


def corollary1_upper(n: int, N: int, delta: float, c_f: float) -> BoundReport:
    """Upper bound for the binary symmetric channel with L*(n) = c_f n."""
    _check_cf(c_f)
    d = min(delta, 1.0 - delta)
    return upper_bound(n, N, d * n, c_f * n, provenance="corollary1")


def corollary2_lower(n: int, N: int, delta: float) -> BoundReport:
    d = min(delta, 1.0 - delta)
    return lower_bound(n, N, d, provenance="corollary2")


def corollary3_upper(n: int, N: int, sigma: float, c_f: float) -> BoundReport:
    """Upper bound for the additive Gaussian channel with L*(n) = c_f n."""
    _check_cf(c_f)
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    return upper_bound(n, N, normal_cdf(-1.0 / (2.0 * sigma)) * n, c_f * n, provenance="corollary3")


def corollary4_lower(n: int, N: int, sigma: float) -> BoundReport:
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    return lower_bound(n, N, normal_cdf(-1.0 / (2.0 * sigma)), provenance="corollary4")


def _check_cf(c_f: float) -> None:
    if not 0.0 <= c_f <= 0.5:
        raise ValueError(f"c_f must lie in [0, 1/2], got {c_f!r}")
