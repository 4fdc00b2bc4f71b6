"""Adaptive Gauss-Kronrod quadrature with batched panel refinement.

The estimator is the classic G7-K15 pair: each panel is valued by the
15-point Kronrod rule and charged |K15 - G7| as its error, a deliberately
conservative estimate.  Refinement is batched: every sweep splits all
panels whose error is at least the mean panel error (always including
the worst), and evaluates the resulting children in one vectorised call,
which is what lets the compiled backend pay off.

Integrands may be expression ASTs (compiled once, evaluated through the
active kernel backend), precompiled Programs, or plain callables.
Non-finite integrand values are never summed silently; the offending
point is located and reported as DomainFault.

integrate_power_singular handles integrands with an implicit
(distance to endpoint)^(theta-1) factor, 0 < theta <= 1, through the
exact substitution v = distance^theta which removes the singularity;
for orders above 1 callers fold the extra integer power into the smooth
factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from ._kernels.tables import WG15, WGK15, XGK15
from .errors import DomainFault, QuadratureNonConvergence
from .expr import nodes as en
from .expr.nodes import Node, eval_ast
from .expr.program import Program, compile_ast

__all__ = [
    "QuadratureConfig",
    "QuadratureResult",
    "integrate",
    "integrate_power_singular",
    "find_sign_changes",
    "DEFAULT_CONFIG",
]


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_subdivisions: int = 2000

    def __post_init__(self):
        if self.abs_tol < 0.0 or self.rel_tol < 0.0:
            raise ValueError("tolerances must be nonnegative")
        if self.abs_tol == 0.0 and self.rel_tol == 0.0:
            raise ValueError("at least one tolerance must be positive")
        if int(self.max_subdivisions) < 1:
            raise ValueError("max_subdivisions must be a positive integer")
        object.__setattr__(self, "max_subdivisions", int(self.max_subdivisions))


DEFAULT_CONFIG = QuadratureConfig()


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    subdivisions_used: int


class _PanelSource:
    """Batch panel evaluator over one integrand, plus scalar fault probes."""

    def __init__(self, f):
        if isinstance(f, Node):
            self.program = compile_ast(f)
            self.fvec = None
        elif isinstance(f, Program):
            self.program = f
            self.fvec = None
        elif callable(f):
            self.program = None
            self.fvec = f
        else:
            raise TypeError(
                "integrand must be an expression AST, a compiled Program, "
                f"or a callable, not {type(f).__name__}"
            )

    def panels(self, los, his):
        if self.program is not None:
            p = self.program
            kern = _kernels.kernels()
            with np.errstate(all="ignore"):
                return kern.panel_eval(
                    p.ops, p.args, p.consts, p.stack_need, los, his
                )
        half = 0.5 * (his - los)
        mid = 0.5 * (his + los)
        pts = mid[:, None] + half[:, None] * XGK15[None, :]
        ys = self._call_vec(pts.ravel()).reshape(pts.shape)
        k15 = ys @ WGK15
        g7 = ys @ WG15
        return half * k15, np.abs(half * (k15 - g7))

    def _call_vec(self, xs):
        # Try the callable vectorised; fall back to a scalar loop for
        # functions written against plain floats.
        with np.errstate(all="ignore"):
            try:
                out = np.asarray(self.fvec(xs), dtype=np.float64)
                if out.shape == xs.shape:
                    return out
            except (TypeError, ValueError):
                pass
            return np.array([float(self.fvec(float(x))) for x in xs])

    def raise_at_fault(self, los, his):
        """Find the first node point with a non-finite value and raise."""
        half = 0.5 * (his - los)
        mid = 0.5 * (his + los)
        pts = (mid[:, None] + half[:, None] * XGK15[None, :]).ravel()
        for x in pts:
            if self.program is not None:
                eval_ast(self.program.source, x)  # raises with diagnostics
            else:
                v = float(self.fvec(float(x)))
                if not math.isfinite(v):
                    raise DomainFault(
                        "non-finite integrand value", "<callable>", x
                    )
        raise DomainFault(
            "non-finite panel sum with finite node values", "<integrand>",
            float(los[0]),
        )


def _clean_breakpoints(breakpoints, lo, hi):
    pts = sorted(float(p) for p in breakpoints if lo < p < hi)
    cleaned = []
    min_gap = 1e-12 * (hi - lo)
    for p in pts:
        if not cleaned or p - cleaned[-1] > min_gap:
            cleaned.append(p)
    return cleaned


def integrate(f, lo, hi, config=None, *, breakpoints=()):
    """Adaptively integrate f over [lo, hi].

    breakpoints are interior abscissae (kinks, known feature boundaries)
    used as initial panel edges so the error estimator is not fooled by
    non-smooth points.
    """
    cfg = config or DEFAULT_CONFIG
    lo = float(lo)
    hi = float(hi)
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError("integration limits must be finite")
    if lo > hi:
        raise ValueError(f"require lo <= hi, got lo = {lo!r}, hi = {hi!r}")
    if lo == hi:
        return QuadratureResult(0.0, 0.0, 0)

    src = _PanelSource(f)
    edges = [lo] + _clean_breakpoints(breakpoints, lo, hi) + [hi]
    los = np.array(edges[:-1])
    his = np.array(edges[1:])
    vals, errs = src.panels(los, his)
    _check_finite(src, vals, errs, los, his)

    subdivisions = 0
    while True:
        total = float(vals.sum())
        total_err = float(errs.sum())
        tol = max(cfg.abs_tol, cfg.rel_tol * abs(total))
        if total_err <= tol:
            return QuadratureResult(total, total_err, subdivisions)

        widths = his - los
        floors = 1e-15 * (np.abs(los) + np.abs(his) + 1.0)
        splittable = widths > floors
        best = QuadratureResult(total, total_err, subdivisions)
        if not splittable.any():
            raise QuadratureNonConvergence(
                "panels at roundoff width before tolerance was met", best
            )

        thresh = total_err / len(los)
        mask = splittable & (errs >= thresh)
        if not mask.any():
            idx = int(np.argmax(np.where(splittable, errs, -1.0)))
            mask = np.zeros(len(los), dtype=bool)
            mask[idx] = True

        budget = cfg.max_subdivisions - subdivisions
        if budget <= 0:
            raise QuadratureNonConvergence(
                f"subdivision limit {cfg.max_subdivisions} reached", best
            )
        if int(mask.sum()) > budget:
            order = np.argsort(np.where(mask, errs, -np.inf))[::-1][:budget]
            mask = np.zeros(len(los), dtype=bool)
            mask[order] = True

        mids = 0.5 * (los + his)
        child_los = np.concatenate([los[mask], mids[mask]])
        child_his = np.concatenate([mids[mask], his[mask]])
        cvals, cerrs = src.panels(child_los, child_his)
        _check_finite(src, cvals, cerrs, child_los, child_his)

        keep = ~mask
        subdivisions += int(mask.sum())
        los = np.concatenate([los[keep], child_los])
        his = np.concatenate([his[keep], child_his])
        vals = np.concatenate([vals[keep], cvals])
        errs = np.concatenate([errs[keep], cerrs])


def _check_finite(src, vals, errs, los, his):
    bad = ~(np.isfinite(vals) & np.isfinite(errs))
    if bad.any():
        src.raise_at_fault(los[bad], his[bad])


def integrate_power_singular(f, theta, lo, hi, singular_at="lo", config=None):
    """Integrate f(s)*d(s)^(theta-1) over [lo, hi], where d(s) is the
    distance from s to the singular endpoint and 0 < theta <= 1.

    Only the smooth factor f is supplied; the power factor is implicit.
    The substitution v = d^theta turns the integral into
    (1/theta) * integral of f at distance v^(1/theta), over [0, D^theta],
    which has a smooth integrand and is handled by :func:`integrate`.
    """
    theta = float(theta)
    if not 0.0 < theta <= 1.0:
        raise ValueError(f"theta must be in (0, 1], got {theta!r}")
    if singular_at not in ("lo", "hi"):
        raise ValueError("singular_at must be 'lo' or 'hi'")
    lo = float(lo)
    hi = float(hi)
    if lo > hi:
        raise ValueError(f"require lo <= hi, got lo = {lo!r}, hi = {hi!r}")
    if lo == hi:
        return QuadratureResult(0.0, 0.0, 0)

    span = (hi - lo) ** theta
    inv_theta = 1.0 / theta

    if isinstance(f, Program):
        f = f.source
    if isinstance(f, Node):
        if singular_at == "lo":
            s_of_v = en.add(en.Num(lo), en.power(en.X, en.Num(inv_theta)))
        else:
            s_of_v = en.sub(en.Num(hi), en.power(en.X, en.Num(inv_theta)))
        g = en.mul(en.Num(inv_theta), en.substitute(f, s_of_v))
        return integrate(g, 0.0, span, config)

    if singular_at == "lo":
        def g(v):
            return inv_theta * np.asarray(f(lo + v ** inv_theta), dtype=np.float64)
    else:
        def g(v):
            return inv_theta * np.asarray(f(hi - v ** inv_theta), dtype=np.float64)
    return integrate(g, 0.0, span, config)


def find_sign_changes(f, lo, hi, n=257):
    """Locate interior zero crossings of f on [lo, hi].

    Scans an n-point uniform mesh for sign changes and sharpens each by
    bisection; exact mesh zeros count as crossings.  Intended for
    breakpoint discovery (absolute values of smooth functions), not as a
    general root finder.
    """
    lo = float(lo)
    hi = float(hi)
    if lo >= hi:
        return []
    src = _PanelSource(f)
    if src.program is not None:
        fvec = lambda xs: src.program.eval(xs, check=False)
        fs = lambda x: eval_ast(src.program.source, x)
    else:
        fvec = src._call_vec
        fs = lambda x: float(f(x))

    ts = np.linspace(lo, hi, int(n))
    vs = fvec(ts)
    roots = []
    for i in range(len(ts) - 1):
        v0, v1 = vs[i], vs[i + 1]
        if not (np.isfinite(v0) and np.isfinite(v1)):
            continue
        if v0 == 0.0:
            if i > 0:
                roots.append(float(ts[i]))
            continue
        if v0 * v1 < 0.0:
            a, b = float(ts[i]), float(ts[i + 1])
            fa = float(v0)
            for _ in range(80):
                m = 0.5 * (a + b)
                fm = fs(m)
                if fm == 0.0:
                    a = b = m
                    break
                if fa * fm < 0.0:
                    b = m
                else:
                    a, fa = m, fm
                if b - a <= 1e-15 * (abs(a) + abs(b) + 1.0):
                    break
            roots.append(0.5 * (a + b))
    return sorted(set(roots))
