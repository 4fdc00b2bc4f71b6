"""Sampling-based certification of GA-convexity and geometric symmetry.

GA-convexity of f on [a, b] means

    f(x^lam * y^(1-lam)) <= lam*f(x) + (1-lam)*f(y)

for x, y in [a, b] and lam in [0, 1]; the s-variant (second sense,
0 < s <= 1) replaces the weights by lam^s and (1-lam)^s.  Geometric
symmetry of g means g(a*b/x) = g(x).

Certification is by dense sampling: structured pairs from a log-uniform
mesh plus seeded random pairs, crossed with a lambda grid.  Each sampled
defect is reduced by a rounding floor proportional to the magnitudes
involved, so worst_violation <= 0 is exactly "holds on samples" without
false alarms from last-digit noise.  A positive worst_violation carries
the witnessing triple.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .funcspec import value_function
from .interval import Interval

__all__ = [
    "SamplingPlan",
    "Witness",
    "ConvexityCertificate",
    "check_ga_convex",
    "check_s_ga_convex",
    "check_geo_symmetric",
]

# Per-sample rounding floor coefficient; see module docstring.
_FLOOR = 1e-11


@dataclass(frozen=True)
class SamplingPlan:
    lambda_points: int = 21
    random_pairs: int = 200
    mesh_points: int = 40
    seed: int = 0

    def __post_init__(self):
        if self.lambda_points < 2:
            raise ValueError("lambda_points must be at least 2")
        if self.random_pairs < 0 or self.mesh_points < 2:
            raise ValueError("need random_pairs >= 0 and mesh_points >= 2")


DEFAULT_PLAN = SamplingPlan()


@dataclass(frozen=True)
class Witness:
    x: float
    y: float
    lam: float | None
    defect: float


@dataclass(frozen=True)
class ConvexityCertificate:
    kind: str                  # 'GA' | 'sGA' | 'geo_symmetric'
    s: float | None
    sample_pairs: int
    lambda_grid: int
    worst_violation: float
    witness: Witness | None

    @property
    def holds(self):
        return self.worst_violation <= 0.0


def _sample_pairs(interval, plan):
    la, lb = math.log(interval.a), math.log(interval.b)
    mesh = np.linspace(la, lb, plan.mesh_points)
    iu, ju = np.triu_indices(plan.mesh_points, k=1)
    lx = mesh[iu]
    ly = mesh[ju]
    if plan.random_pairs:
        rng = np.random.default_rng(np.random.SeedSequence(plan.seed))
        rnd = rng.uniform(la, lb, size=(2, plan.random_pairs))
        lx = np.concatenate([lx, rnd[0]])
        ly = np.concatenate([ly, rnd[1]])
    return lx, ly


def _certify_mix(f, interval, plan, kind, s, weight_fn):
    val = value_function(f)
    lx, ly = _sample_pairs(interval, plan)
    lams = np.linspace(0.0, 1.0, plan.lambda_points)
    wl, wr = weight_fn(lams)

    fx = val.vec(np.exp(lx))
    fy = val.vec(np.exp(ly))
    lmix = lx[:, None] * lams[None, :] + ly[:, None] * (1.0 - lams[None, :])
    fmix = val.vec(np.exp(lmix.ravel())).reshape(lmix.shape)

    bound = fx[:, None] * wl[None, :] + fy[:, None] * wr[None, :]
    floor = _FLOOR * (1.0 + np.abs(fmix) + np.abs(fx)[:, None]
                      + np.abs(fy)[:, None])
    viol = (fmix - bound) - floor

    worst = float(np.max(viol))
    witness = None
    if worst > 0.0:
        i, j = np.unravel_index(int(np.argmax(viol)), viol.shape)
        witness = Witness(
            x=float(np.exp(lx[i])),
            y=float(np.exp(ly[i])),
            lam=float(lams[j]),
            defect=float(fmix[i, j] - bound[i, j]),
        )
    return ConvexityCertificate(
        kind=kind,
        s=s,
        sample_pairs=len(lx),
        lambda_grid=plan.lambda_points,
        worst_violation=worst,
        witness=witness,
    )


def check_ga_convex(f, interval, plan=DEFAULT_PLAN):
    """Certify GA-convexity of f on the interval by sampling."""
    if not isinstance(interval, Interval):
        raise TypeError("interval must be an Interval")
    return _certify_mix(
        f, interval, plan, "GA", None, lambda lams: (lams, 1.0 - lams)
    )


def check_s_ga_convex(f, interval, s, plan=DEFAULT_PLAN):
    """Certify s-GA-convexity (second sense) of f, 0 < s <= 1."""
    if not isinstance(interval, Interval):
        raise TypeError("interval must be an Interval")
    s = float(s)
    if not 0.0 < s <= 1.0:
        raise ValueError(f"s must lie in (0, 1], got {s!r}")
    return _certify_mix(
        f, interval, plan, "sGA", s,
        lambda lams: (lams ** s, (1.0 - lams) ** s),
    )


def check_geo_symmetric(g, interval, plan=DEFAULT_PLAN):
    """Certify g(a*b/x) = g(x) on a log-uniform mesh."""
    if not isinstance(interval, Interval):
        raise TypeError("interval must be an Interval")
    val = value_function(g)
    xs = interval.log_mesh(plan.mesh_points)
    mirror = interval.a * interval.b / xs
    gx = val.vec(xs)
    gm = val.vec(mirror)
    floor = _FLOOR * (1.0 + np.abs(gx) + np.abs(gm))
    viol = np.abs(gm - gx) - floor
    worst = float(np.max(viol))
    witness = None
    if worst > 0.0:
        i = int(np.argmax(viol))
        witness = Witness(
            x=float(xs[i]),
            y=float(mirror[i]),
            lam=None,
            defect=float(abs(gm[i] - gx[i])),
        )
    return ConvexityCertificate(
        kind="geo_symmetric",
        s=None,
        sample_pairs=plan.mesh_points,
        lambda_grid=0,
        worst_violation=worst,
        witness=witness,
    )
