"""Classical means of positive reals and the Gamma function.

The logarithmic mean is evaluated through log1p of the relative gap so
nearby arguments do not lose digits to cancellation.  Gamma delegates to
math.gamma (documented accuracy ~1 ulp, well inside the 12-significant-
digit contract) and restricts the domain to x > 0, which covers every
use in this package (orders alpha and alpha + 1).
"""

from __future__ import annotations

import math

__all__ = ["arithmetic_mean", "geometric_mean", "logarithmic_mean", "gamma"]


def _require_positive(name, v):
    v = float(v)
    if not math.isfinite(v) or v <= 0.0:
        raise ValueError(f"{name} must be a finite positive real, got {v!r}")
    return v


def arithmetic_mean(x, y):
    x = _require_positive("x", x)
    y = _require_positive("y", y)
    return 0.5 * (x + y)


def geometric_mean(x, y):
    x = _require_positive("x", x)
    y = _require_positive("y", y)
    return math.sqrt(x) * math.sqrt(y)


def logarithmic_mean(x, y):
    """(y - x)/(ln y - ln x) for x != y, continuously extended at x = y."""
    x = _require_positive("x", x)
    y = _require_positive("y", y)
    if x == y:
        return x
    if y < x:
        x, y = y, x
    d = (y - x) / x
    # L = x*d/log1p(d); stable for y near x since d/log1p(d) -> 1.
    return x * d / math.log1p(d)


def gamma(x):
    """Gamma(x) for x > 0."""
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise ValueError(f"gamma requires x > 0, got {x!r}")
    return math.gamma(x)
