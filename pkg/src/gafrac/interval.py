"""Positive intervals and the geometric geodesics used throughout.

An Interval [a, b] requires 0 < a < b.  The two geodesic
parametrisations

    lower(t) = a^t * G^(1-t)      (G down to a as t goes 0 -> 1)
    upper(t) = b^t * G^(1-t)      (G up to b)

with G = sqrt(a*b) trace the interval multiplicatively; they are the
substitution curves behind every bound constant in the inequalities
package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["Interval"]


@dataclass(frozen=True)
class Interval:
    a: float
    b: float

    def __post_init__(self):
        a = float(self.a)
        b = float(self.b)
        if not (math.isfinite(a) and math.isfinite(b)):
            raise ValueError("interval endpoints must be finite")
        if not 0.0 < a < b:
            raise ValueError(
                f"interval requires 0 < a < b, got a = {a!r}, b = {b!r}"
            )
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def G(self):
        """Geometric mean of the endpoints."""
        return math.sqrt(self.a) * math.sqrt(self.b)

    @property
    def logwidth(self):
        """ln(b/a), the length of the interval in the log metric."""
        return math.log(self.b) - math.log(self.a)

    def geodesic_lower(self, t):
        """a^t * G^(1-t); accepts scalars or arrays, t in [0, 1]."""
        t = np.asarray(t, dtype=np.float64)
        out = np.exp(np.log(self.G) + t * (np.log(self.a) - np.log(self.G)))
        return float(out) if out.ndim == 0 else out

    def geodesic_upper(self, t):
        """b^t * G^(1-t); accepts scalars or arrays, t in [0, 1]."""
        t = np.asarray(t, dtype=np.float64)
        out = np.exp(np.log(self.G) + t * (np.log(self.b) - np.log(self.G)))
        return float(out) if out.ndim == 0 else out

    def contains(self, x):
        return self.a <= x <= self.b

    def log_mesh(self, n):
        """n points log-uniformly spaced over [a, b], endpoints included."""
        return np.exp(np.linspace(math.log(self.a), math.log(self.b), int(n)))
