"""Report records for inequality verifications.

Every verifier returns an InequalityReport.  The sign convention is
slack = rhs - lhs, so nonnegative slack means the bound holds; a report
passes when the slack is no worse than the error budget

    error_budget = 10 * (sum of quadrature error estimates)
                   + 1e-12 * (|lhs| + |rhs|),

which keeps equality cases from failing on last-digit noise while still
flagging genuine violations, whose defects are orders of magnitude
larger for any real counterexample.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

__all__ = ["HolderExponents", "InequalityReport"]

# Relative floor applied on top of the accumulated quadrature error.
_REL_FLOOR = 1e-12

# Serialized field order, fixed for byte-stable reports.
REPORT_FIELDS = (
    "inequality", "params", "lhs", "rhs", "slack", "pass",
    "error_budget", "seed", "case_index",
)


@dataclass(frozen=True)
class HolderExponents:
    """A conjugate exponent pair: q, p > 1 with 1/p + 1/q = 1."""

    q: float
    p: float

    def __post_init__(self):
        q = float(self.q)
        p = float(self.p)
        if not (math.isfinite(q) and q > 1.0):
            raise ValueError(f"q must exceed 1, got {q!r}")
        if not (math.isfinite(p) and p > 1.0):
            raise ValueError(f"p must exceed 1, got {p!r}")
        if abs(1.0 / p + 1.0 / q - 1.0) > 1e-12:
            raise ValueError(
                f"p and q are not conjugate: 1/{p!r} + 1/{q!r} != 1"
            )
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "p", p)

    @classmethod
    def from_q(cls, q):
        q = float(q)
        if not (math.isfinite(q) and q > 1.0):
            raise ValueError(f"q must exceed 1, got {q!r}")
        return cls(q, q / (q - 1.0))


@dataclass(frozen=True)
class InequalityReport:
    """Outcome of one verified inequality (or residual check)."""

    inequality: str
    params: dict = field(compare=False)
    lhs: float
    rhs: float
    slack: float
    passed: bool
    error_budget: float
    seed: int = 0
    case_index: int = 0

    @classmethod
    def build(cls, inequality, params, lhs, rhs, quad_errors=(),
              seed=0, case_index=0):
        """Assemble a report, deriving slack, budget, and the verdict."""
        lhs = float(lhs)
        rhs = float(rhs)
        slack = rhs - lhs
        budget = 10.0 * float(sum(quad_errors)) + _REL_FLOOR * (
            abs(lhs) + abs(rhs)
        )
        return cls(
            inequality=str(inequality),
            params=dict(params),
            lhs=lhs,
            rhs=rhs,
            slack=slack,
            passed=bool(slack >= -budget),
            error_budget=budget,
            seed=int(seed),
            case_index=int(case_index),
        )

    def to_dict(self):
        """Plain mapping in the canonical field order ('pass' key)."""
        return {
            "inequality": self.inequality,
            "params": dict(self.params),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "pass": self.passed,
            "error_budget": self.error_budget,
            "seed": self.seed,
            "case_index": self.case_index,
        }
