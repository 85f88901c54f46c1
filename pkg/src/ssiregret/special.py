"""Standard normal distribution helpers."""

import math

_SQRT2 = math.sqrt(2.0)
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def normal_cdf(z: float) -> float:
    """Standard normal CDF, Phi(z) = erfc(-z / sqrt(2)) / 2.

    The complementary error function keeps full relative precision in
    the lower tail, so Phi(-5) is still accurate to ~1e-16 relative.
    """
    return 0.5 * math.erfc(-z / _SQRT2)


def normal_pdf(x: float, mean: float = 0.0, sd: float = 1.0) -> float:
    u = (x - mean) / sd
    return _INV_SQRT_2PI * math.exp(-0.5 * u * u) / sd
