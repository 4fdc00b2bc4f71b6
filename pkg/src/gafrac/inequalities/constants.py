"""Constants entering the trapezoid bounds, computed by quadrature.

Everything here lives on the unit t-interval, with the two geodesics

    L(t) = a^t G^(1-t),   U(t) = b^t G^(1-t),   G = sqrt(ab),

walking from the geometric midpoint out to the endpoints.  The zeta
constants weight |2h(.) - h(b)| along the geodesics; the C constants
specialize h to the fractional weight, leaving kernels built from
(1+t)^alpha - (1-t)^alpha (exact form) or 2^alpha t^alpha (relaxed
form, valid for alpha <= 1).

Endpoint powers are handled exactly: (1-t)^alpha near t = 1 and
t^alpha near t = 0 are split into an implicit power kernel plus a
smooth factor and sent through integrate_power_singular, so the
quadrature error estimates stay honest for fractional alpha.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import GafracError
from ..expr import nodes as en
from ..expr.nodes import Num, X
from ..fractional import FractionalOrder
from ..funcspec import value_function
from ..interval import Interval
from ..quadrature import (
    DEFAULT_CONFIG,
    find_sign_changes,
    integrate,
    integrate_power_singular,
)

__all__ = [
    "CConstants",
    "ZetaConstants",
    "c_constants_alpha",
    "c_constants_alpha_q",
    "corollary2_closed_forms",
    "sup_norm",
    "zeta_constants",
]

_EXACT_NAMES = ("exact", "exact_29")
_RELAXED_NAMES = ("relaxed", "relaxed_210")


@dataclass(frozen=True)
class ZetaConstants:
    """The three geodesic weights of the generic trapezoid bound."""

    zeta1: float
    zeta2: float
    zeta3: float
    error_estimate: float

    def __iter__(self):
        return iter((self.zeta1, self.zeta2, self.zeta3))


@dataclass(frozen=True)
class CConstants:
    """Fractional-weight constants C1, C2, C3 with their quadrature error."""

    c1: float
    c2: float
    c3: float
    error_estimate: float

    def __iter__(self):
        return iter((self.c1, self.c2, self.c3))


def _geodesic_log_asts(interval):
    """ASTs in t for ln L(t) and ln U(t)."""
    lg = math.log(interval.G)
    la = math.log(interval.a)
    lb = math.log(interval.b)
    log_lower = en.add(Num(lg), en.mul(Num(la - lg), X))
    log_upper = en.add(Num(lg), en.mul(Num(lb - lg), X))
    return log_lower, log_upper


def geodesic_asts(interval):
    """ASTs in t for the geodesics L(t) and U(t) themselves."""
    log_lower, log_upper = _geodesic_log_asts(interval)
    return en.func("exp", log_lower), en.func("exp", log_upper)


def zeta_constants(h, interval, config=None):
    """The weights zeta1, zeta2, zeta3 built from |2h(.) - h(b)|.

        zeta1 = int_0^1 t L(t) |2h(L(t)) - h(b)| dt
        zeta2 = int_0^1 (1-t) L(t) |2h(L(t)) - h(b)| dt
              + int_0^1 (1-t) U(t) |2h(U(t)) - h(b)| dt
        zeta3 = int_0^1 t U(t) |2h(U(t)) - h(b)| dt

    The absolute values kink where 2h - h(b) crosses zero; crossings are
    located up front and passed to the quadrature as breakpoints.
    """
    if not isinstance(interval, Interval):
        raise TypeError("interval must be an Interval")
    config = config or DEFAULT_CONFIG
    hval = value_function(h)
    if hval.ast is None:
        raise TypeError("h must be expression-backed (text, AST, or spec)")
    hb = hval.at(interval.b)

    lower_ast, upper_ast = geodesic_asts(interval)
    total = []
    err = 0.0

    def branch(point_ast, weight_ast):
        nonlocal err
        phi = en.sub(en.mul(Num(2.0), en.substitute(hval.ast, point_ast)),
                     Num(hb))
        cuts = find_sign_changes(phi, 0.0, 1.0)
        integrand = en.mul(en.mul(weight_ast, point_ast),
                           en.func("abs", phi))
        res = integrate(integrand, 0.0, 1.0, config, breakpoints=cuts)
        err += res.error_estimate
        return res.value

    one_minus_t = en.sub(Num(1.0), X)
    z1 = branch(lower_ast, X)
    z2 = branch(lower_ast, one_minus_t) + branch(upper_ast, one_minus_t)
    z3 = branch(upper_ast, X)
    return ZetaConstants(z1, z2, z3, err)


def _integrate_power_one_minus(alpha, smooth, config):
    """int_0^1 (1-t)^alpha * smooth(t) dt with the power split off."""
    m = max(0, math.ceil(alpha) - 1)
    theta = alpha - m
    # (1-t)^alpha = (1-t)^(theta-1) * (1-t)^(m+1); theta in (0, 1].
    carried = en.mul(en.power(en.sub(Num(1.0), X), Num(float(m + 1))),
                     smooth)
    return integrate_power_singular(carried, theta, 0.0, 1.0,
                                    singular_at="hi", config=config)


def _integrate_power_t(alpha, smooth, config):
    """int_0^1 t^(alpha-1) * smooth(t) dt, alpha in (0, 1]."""
    return integrate_power_singular(smooth, alpha, 0.0, 1.0,
                                    singular_at="lo", config=config)


def _exact_kernel_integral(alpha, weight, config):
    """int_0^1 [(1+t)^alpha - (1-t)^alpha] * weight(t) dt."""
    plus = integrate(
        en.mul(en.power(en.add(Num(1.0), X), Num(alpha)), weight),
        0.0, 1.0, config,
    )
    minus = _integrate_power_one_minus(alpha, weight, config)
    value = plus.value - minus.value
    return value, plus.error_estimate + minus.error_estimate


def c_constants_alpha(interval, alpha, variant, config=None):
    """The constants C1(alpha), C2(alpha), C3(alpha) of the fractional
    trapezoid bound.

    variant 'exact' uses the kernel (1+t)^alpha - (1-t)^alpha; variant
    'relaxed' uses the majorant t^alpha kernel (the 2^alpha factor moves
    into the bound's prefactor) and requires alpha <= 1.
    """
    if not isinstance(interval, Interval):
        raise TypeError("interval must be an Interval")
    alpha = FractionalOrder.coerce(alpha).alpha
    config = config or DEFAULT_CONFIG
    lower_ast, upper_ast = geodesic_asts(interval)
    one_minus_t = en.sub(Num(1.0), X)

    if variant in _EXACT_NAMES:
        weights = (
            en.mul(X, lower_ast),
            en.mul(one_minus_t, en.add(lower_ast, upper_ast)),
            en.mul(X, upper_ast),
        )
        values = []
        err = 0.0
        for w in weights:
            v, e = _exact_kernel_integral(alpha, w, config)
            values.append(v)
            err += e
        return CConstants(values[0], values[1], values[2], err)

    if variant in _RELAXED_NAMES:
        if alpha > 1.0:
            raise ValueError(
                f"relaxed constants require alpha <= 1, got {alpha!r}"
            )
        # t^(alpha+1) L = t^(alpha-1) * t^2 L, and similarly for the rest.
        t2 = en.power(X, Num(2.0))
        smooths = (
            en.mul(t2, lower_ast),
            en.mul(en.mul(X, one_minus_t), en.add(lower_ast, upper_ast)),
            en.mul(t2, upper_ast),
        )
        values = []
        err = 0.0
        for s in smooths:
            res = _integrate_power_t(alpha, s, config)
            values.append(res.value)
            err += res.error_estimate
        return CConstants(values[0], values[1], values[2], err)

    raise ValueError(
        f"variant must be one of {_EXACT_NAMES + _RELAXED_NAMES}, "
        f"got {variant!r}"
    )


def c_constants_alpha_q(interval, alpha, q, config=None):
    """The Holder-weighted constants C1(alpha,q), C2(alpha,q), C3(alpha,q).

    Same exact kernel as c_constants_alpha but with the geodesics raised
    to the q-th power: C1 = int [(1+t)^a - (1-t)^a] t L(t)^q dt, C2 the
    (1-t)(L^q + U^q) analogue, C3 the t U^q analogue.  q = 1 is allowed
    and reduces to the exact-variant constants.
    """
    if not isinstance(interval, Interval):
        raise TypeError("interval must be an Interval")
    alpha = FractionalOrder.coerce(alpha).alpha
    q = float(q)
    if not (math.isfinite(q) and q >= 1.0):
        raise ValueError(f"q must be >= 1, got {q!r}")
    config = config or DEFAULT_CONFIG

    log_lower, log_upper = _geodesic_log_asts(interval)
    lower_q = en.func("exp", en.mul(Num(q), log_lower))
    upper_q = en.func("exp", en.mul(Num(q), log_upper))
    one_minus_t = en.sub(Num(1.0), X)

    weights = (
        en.mul(X, lower_q),
        en.mul(one_minus_t, en.add(lower_q, upper_q)),
        en.mul(X, upper_q),
    )
    values = []
    err = 0.0
    for w in weights:
        v, e = _exact_kernel_integral(alpha, w, config)
        values.append(v)
        err += e
    return CConstants(values[0], values[1], values[2], err)


def corollary2_closed_forms(interval):
    """Closed forms of the alpha = 1 constants C1(1), C2(1), C3(1).

    These are the antiderivative evaluations of the defining integrals
    int t^2 L dt, int t(1-t)(L+U) dt, int t^2 U dt.  The formulas
    subtract large near-equal terms, so nearly degenerate intervals are
    rejected; quadrature covers that regime instead.
    """
    if not isinstance(interval, Interval):
        raise TypeError("interval must be an Interval")
    w = interval.logwidth
    if w < 1e-3:
        raise ValueError(
            "interval too close to degenerate for the closed forms "
            f"(logwidth {w!r} < 1e-3); use the quadrature constants"
        )
    a = interval.a
    b = interval.b
    g = interval.G
    c1 = (2.0 / w) * (-a - 4.0 * a / w - (8.0 * a - 8.0 * g) / w ** 2)
    c2 = (2.0 / w) * (2.0 * (a + b + 2.0 * g) / w + 8.0 * (a - b) / w ** 2)
    c3 = (2.0 / w) * (b - 4.0 * b / w + (8.0 * b - 8.0 * g) / w ** 2)
    return (c1, c2, c3)


def sup_norm(g, interval, samples=4096):
    """sup |g| over [a, b] by dense log-uniform sampling plus
    golden-section refinement around the three largest samples."""
    if not isinstance(interval, Interval):
        raise TypeError("interval must be an Interval")
    samples = int(samples)
    if samples < 8:
        raise ValueError("need at least 8 samples")
    gval = value_function(g)

    us = np.linspace(math.log(interval.a), math.log(interval.b), samples)
    vals = np.abs(gval.vec(np.exp(us)))
    if not np.all(np.isfinite(vals)):
        raise GafracError("weight evaluated non-finite on the interval")
    best = float(vals.max())

    top = np.argsort(vals)[-3:]
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    for i in top:
        lo = us[max(int(i) - 1, 0)]
        hi = us[min(int(i) + 1, samples - 1)]
        x1 = hi - inv_phi * (hi - lo)
        x2 = lo + inv_phi * (hi - lo)
        f1 = abs(gval.at(math.exp(x1)))
        f2 = abs(gval.at(math.exp(x2)))
        for _ in range(80):
            if f1 < f2:
                lo = x1
                x1, f1 = x2, f2
                x2 = lo + inv_phi * (hi - lo)
                f2 = abs(gval.at(math.exp(x2)))
            else:
                hi = x2
                x2, f2 = x1, f1
                x1 = hi - inv_phi * (hi - lo)
                f1 = abs(gval.at(math.exp(x1)))
        best = max(best, f1, f2)
    return best
