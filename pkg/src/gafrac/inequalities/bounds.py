"""Verifiers for the trapezoid, fractional, and endpoint bounds.

Each verifier evaluates both sides of one inequality by quadrature and
returns an InequalityReport whose pass flag means LHS <= RHS up to an
error budget driven by the constituent quadrature error estimates.

Hypotheses are certified by sampling before any quadrature runs: the
relevant power of |f'| must be GA-convex, weights must be positive and
geometrically symmetric, and the direct Hermite-Hadamard check needs f
itself (s-)GA-convex.  A failed certificate raises PreconditionError
carrying the witness; a verifier never silently reports on inputs
outside its hypotheses.  Certification can be switched off with
check=False for callers that have certified elsewhere.

Every report's params dict holds the expression texts and numeric
parameters needed to rebuild the exact evaluation.
"""

from __future__ import annotations

import math

import numpy as np

from ..convexity import (
    DEFAULT_PLAN,
    check_ga_convex,
    check_geo_symmetric,
    check_s_ga_convex,
)
from ..errors import PreconditionError
from ..expr import nodes as en
from ..expr.nodes import Num, X
from ..fractional import FractionalOrder, hadamard_left, hadamard_right
from ..funcspec import as_function_spec, value_function
from ..interval import Interval
from ..means import arithmetic_mean, gamma, logarithmic_mean
from ..quadrature import DEFAULT_CONFIG, find_sign_changes, integrate
from .constants import (
    c_constants_alpha,
    c_constants_alpha_q,
    corollary2_closed_forms,
    geodesic_asts,
    sup_norm,
    zeta_constants,
)
from .identity import trapezoid_functional
from .reports import HolderExponents, InequalityReport

__all__ = [
    "theorem5_verify",
    "corollary1_verify",
    "corollary2_variants",
    "theorem6_verify",
    "corollary3_verify",
    "corollary4_verify",
    "hh_ga_verify",
    "zhang_bounds",
]

_POSITIVITY_SAMPLES = 1024


def _need_interval(interval):
    if not isinstance(interval, Interval):
        raise TypeError("interval must be an Interval")


def _abs_deriv_power(f, q=1.0):
    """|f'|^q in a form the convexity checker can sample."""
    if f.derivative is not None:
        node = en.func("abs", f.derivative)
        if q != 1.0:
            node = en.power(node, Num(float(q)))
        return node
    if q == 1.0:
        return lambda xs: np.abs(f.deriv(xs))
    return lambda xs: np.abs(f.deriv(xs)) ** float(q)


def _require(cert, what):
    if cert.holds:
        return
    wit = cert.witness
    where = ""
    if wit is not None:
        where = f" (witness x = {wit.x!r}, y = {wit.y!r}"
        if wit.lam is not None:
            where += f", lambda = {wit.lam!r}"
        where += f", defect = {wit.defect!r})"
    raise PreconditionError(f"{what} failed certification{where}", cert)


def _certify_deriv(f, interval, q, plan):
    cert = check_ga_convex(_abs_deriv_power(f, q), interval,
                           plan or DEFAULT_PLAN)
    label = "|f'|" if q == 1.0 else f"|f'|^{q:g}"
    _require(cert, f"GA-convexity of {label}")


def _certify_weight(g, interval, plan):
    """g must be positive on [a, b] and symmetric about sqrt(ab)."""
    cert = check_geo_symmetric(g, interval, plan or DEFAULT_PLAN)
    _require(cert, "geometric symmetry of g")
    gval = value_function(g)
    us = np.linspace(math.log(interval.a), math.log(interval.b),
                     _POSITIVITY_SAMPLES)
    vals = gval.vec(np.exp(us))
    worst = int(np.argmin(vals))
    if not float(vals[worst]) > 0.0:
        raise PreconditionError(
            "positivity of g failed certification (witness x = "
            f"{float(np.exp(us[worst]))!r}, g(x) = {float(vals[worst])!r})"
        )


def _maybe_text(val):
    return en.to_string(val.ast) if val.ast is not None else "<callable>"


def _spec_params(spec, name="f"):
    out = {name: spec.value_text}
    if spec.derivative_mode == "finite_difference":
        out[f"{name}_derivative_mode"] = "finite_difference"
    else:
        out[f"{name}prime"] = spec.derivative_text
    return out


def _endpoint_derivs(f, interval):
    return (
        abs(f.deriv(interval.a)),
        abs(f.deriv(interval.G)),
        abs(f.deriv(interval.b)),
    )


def theorem5_verify(f, h, interval, config=None, *, check=True, plan=None,
                    seed=0, case_index=0):
    """Trapezoid bound with generic weight h:

        |(h(b)-2h(a))f(a)/2 + h(b)f(b)/2 - int f h' dx|
            <= (W/4) [zeta1 |f'(a)| + zeta2 |f'(G)| + zeta3 |f'(b)|]

    for |f'| GA-convex on [a, b].
    """
    f = as_function_spec(f)
    h = as_function_spec(h)
    _need_interval(interval)
    config = config or DEFAULT_CONFIG
    if check:
        _certify_deriv(f, interval, 1.0, plan)

    gap, gap_err = trapezoid_functional(f, h, interval, config)
    z = zeta_constants(h, interval, config)
    da, dg, db = _endpoint_derivs(f, interval)
    w4 = interval.logwidth / 4.0
    rhs = w4 * (z.zeta1 * da + z.zeta2 * dg + z.zeta3 * db)
    rhs_err = w4 * z.error_estimate * max(da, dg, db)

    params = _spec_params(f)
    params.update(_spec_params(h, "h"))
    params.update(a=interval.a, b=interval.b)
    return InequalityReport.build(
        "theorem5", params, abs(gap), rhs,
        quad_errors=(gap_err, rhs_err), seed=seed, case_index=case_index,
    )


def _product(fval, gval):
    if fval.ast is not None and gval.ast is not None:
        return en.mul(fval.ast, gval.ast)

    def prod(xs):
        xs = np.asarray(xs, dtype=np.float64)
        return fval.vec(xs) * gval.vec(xs)

    return prod


def _weighted_gap(f, g, interval, alpha, config):
    """LHS of the fractional weighted bounds and its error estimate:

        |A(f(a), f(b)) (J_[a+] g(b) + J_[b-] g(a))
            - (J_[a+] fg(b) + J_[b-] fg(a))|
    """
    fval = value_function(f)
    gval = value_function(g)
    fa = fval.at(interval.a)
    fb = fval.at(interval.b)
    trap = 0.5 * (fa + fb)

    jg_l = hadamard_left(g, interval, alpha, interval.b, config)
    jg_r = hadamard_right(g, interval, alpha, interval.a, config)
    fg = _product(fval, gval)
    jfg_l = hadamard_left(fg, interval, alpha, interval.b, config)
    jfg_r = hadamard_right(fg, interval, alpha, interval.a, config)

    value = trap * (jg_l.value + jg_r.value) - (jfg_l.value + jfg_r.value)
    err = (abs(trap) * (jg_l.error_estimate + jg_r.error_estimate)
           + jfg_l.error_estimate + jfg_r.error_estimate)
    return abs(value), err


def corollary1_verify(f, g, interval, alpha, variant="exact", config=None, *,
                      check=True, plan=None, seed=0, case_index=0):
    """Fractional trapezoid bound with a positive geometrically symmetric
    weight g.  The exact variant uses the kernel constants C_i(alpha) and
    prefactor W^(alpha+1) / (2^(alpha+1) Gamma(alpha+1)); the relaxed
    variant (alpha <= 1) majorizes the kernel by 2^alpha t^alpha, giving
    prefactor W^(alpha+1) / (2 Gamma(alpha+1)) with its own C_i.
    """
    f = as_function_spec(f)
    _need_interval(interval)
    alpha = FractionalOrder.coerce(alpha).alpha
    config = config or DEFAULT_CONFIG
    if check:
        _certify_weight(g, interval, plan)
        _certify_deriv(f, interval, 1.0, plan)

    lhs, lhs_err = _weighted_gap(f, g, interval, alpha, config)
    gsup = sup_norm(g, interval)
    cc = c_constants_alpha(interval, alpha, variant, config)
    w = interval.logwidth
    if variant in ("exact", "exact_29"):
        pre = w ** (alpha + 1.0) / (2.0 ** (alpha + 1.0) * gamma(alpha + 1.0))
    else:
        pre = w ** (alpha + 1.0) / (2.0 * gamma(alpha + 1.0))
    da, dg, db = _endpoint_derivs(f, interval)
    rhs = pre * gsup * (cc.c1 * da + cc.c2 * dg + cc.c3 * db)
    rhs_err = pre * gsup * cc.error_estimate * max(da, dg, db)

    params = _spec_params(f)
    params.update(g=_maybe_text(value_function(g)), a=interval.a,
                  b=interval.b, alpha=alpha, variant=variant)
    return InequalityReport.build(
        "corollary1", params, lhs, rhs,
        quad_errors=(lhs_err, rhs_err), seed=seed, case_index=case_index,
    )


def _unweighted_gap(f, interval, alpha, config):
    """LHS shared by the g = 1 specializations:

        |A(f(a), f(b))
            - (Gamma(alpha+1) / (2 W^alpha)) (J_[a+] f(b) + J_[b-] f(a))|
    """
    fval = value_function(f)
    trap = 0.5 * (fval.at(interval.a) + fval.at(interval.b))
    j_l = hadamard_left(f, interval, alpha, interval.b, config)
    j_r = hadamard_right(f, interval, alpha, interval.a, config)
    scale = gamma(alpha + 1.0) / (2.0 * interval.logwidth ** alpha)
    value = trap - scale * (j_l.value + j_r.value)
    err = scale * (j_l.error_estimate + j_r.error_estimate)
    return abs(value), err


def corollary2_variants(f, interval, alpha=1.0, which="eq217", config=None, *,
                        check=True, plan=None, seed=0, case_index=0):
    """The g = 1 trapezoid bounds.

    which = 'eq217': any alpha > 0, RHS (W / 2^(alpha+2)) with the exact
    kernel constants C_i(alpha).  which = 'eq218': the alpha = 1 closed
    forms with RHS prefactor W/4.
    """
    f = as_function_spec(f)
    _need_interval(interval)
    alpha = FractionalOrder.coerce(alpha).alpha
    config = config or DEFAULT_CONFIG
    if which not in ("eq217", "eq218"):
        raise ValueError(f"which must be 'eq217' or 'eq218', got {which!r}")
    if which == "eq218" and alpha != 1.0:
        raise ValueError("the closed-form variant is the alpha = 1 case; "
                         f"got alpha = {alpha!r}")
    if check:
        _certify_deriv(f, interval, 1.0, plan)

    lhs, lhs_err = _unweighted_gap(f, interval, alpha, config)
    da, dg, db = _endpoint_derivs(f, interval)
    w = interval.logwidth
    if which == "eq217":
        cc = c_constants_alpha(interval, alpha, "exact", config)
        rhs = w / 2.0 ** (alpha + 2.0) * (cc.c1 * da + cc.c2 * dg + cc.c3 * db)
        rhs_err = w / 2.0 ** (alpha + 2.0) * cc.error_estimate * max(da, dg, db)
    else:
        c1, c2, c3 = corollary2_closed_forms(interval)
        rhs = w / 4.0 * (c1 * da + c2 * dg + c3 * db)
        # Closed forms carry cancellation roundoff at scale eps * the
        # largest subtracted term.
        term = max(interval.b, interval.a) * (2.0 / w) * (
            1.0 + 4.0 / w + 16.0 / w ** 2)
        rhs_err = w / 4.0 * 3.0 * 2.3e-16 * term * max(da, dg, db)

    params = _spec_params(f)
    params.update(a=interval.a, b=interval.b, alpha=alpha, which=which)
    return InequalityReport.build(
        "corollary2", params, lhs, rhs,
        quad_errors=(lhs_err, rhs_err), seed=seed, case_index=case_index,
    )


def theorem6_verify(f, h, interval, q, config=None, *, check=True, plan=None,
                    seed=0, case_index=0):
    """Holder-split trapezoid bound, q > 1:

        LHS as theorem5;
        RHS = (W/4) sum over the two geodesic branches of
              (int |2h(P) - h(b)| dt)^(1-1/q)
            * (int |2h(P) - h(b)| P^q [t d_end^q + (1-t) d_G^q] dt)^(1/q)

    where P walks G -> a with endpoint derivative d_end = |f'(a)| on one
    branch and G -> b with |f'(b)| on the other, and |f'|^q is GA-convex.
    """
    f = as_function_spec(f)
    h = as_function_spec(h)
    _need_interval(interval)
    exps = q if isinstance(q, HolderExponents) else HolderExponents.from_q(q)
    q = exps.q
    config = config or DEFAULT_CONFIG
    if check:
        _certify_deriv(f, interval, q, plan)

    gap, gap_err = trapezoid_functional(f, h, interval, config)
    da, dg, db = _endpoint_derivs(f, interval)
    hval = value_function(h)
    hb = hval.at(interval.b)
    lg = math.log(interval.G)
    lower_ast, upper_ast = geodesic_asts(interval)
    log_lower = en.add(Num(lg), en.mul(Num(math.log(interval.a) - lg), X))
    log_upper = en.add(Num(lg), en.mul(Num(math.log(interval.b) - lg), X))

    rhs = 0.0
    rhs_hi = 0.0
    for point_ast, log_ast, d_end in (
        (lower_ast, log_lower, da),
        (upper_ast, log_upper, db),
    ):
        phi = en.sub(en.mul(Num(2.0), en.substitute(hval.ast, point_ast)),
                     Num(hb))
        cuts = find_sign_changes(phi, 0.0, 1.0)
        abs_phi = en.func("abs", phi)
        res_a = integrate(abs_phi, 0.0, 1.0, config, breakpoints=cuts)
        power_q = en.func("exp", en.mul(Num(q), log_ast))
        mix = en.add(en.mul(X, Num(d_end ** q)),
                     en.mul(en.sub(Num(1.0), X), Num(dg ** q)))
        res_b = integrate(en.mul(abs_phi, en.mul(power_q, mix)),
                          0.0, 1.0, config, breakpoints=cuts)
        rhs += res_a.value ** (1.0 - 1.0 / q) * res_b.value ** (1.0 / q)
        # The branch term is monotone in both integrals, so shifting each
        # by its error estimate bounds the propagated error.
        rhs_hi += ((res_a.value + res_a.error_estimate) ** (1.0 - 1.0 / q)
                   * (res_b.value + res_b.error_estimate) ** (1.0 / q))
    w4 = interval.logwidth / 4.0
    rhs_err = w4 * (rhs_hi - rhs)
    rhs *= w4

    params = _spec_params(f)
    params.update(_spec_params(h, "h"))
    params.update(a=interval.a, b=interval.b, q=q)
    return InequalityReport.build(
        "theorem6", params, abs(gap), rhs,
        quad_errors=(gap_err, rhs_err), seed=seed, case_index=case_index,
    )


def corollary3_verify(f, g, interval, alpha, q, config=None, *, check=True,
                      plan=None, seed=0, case_index=0):
    """Power-mean form of the weighted fractional bound, q > 1:

        LHS as corollary1;
        RHS = (W^(alpha+1) ||g||_inf / (2^(alpha+1) Gamma(alpha+1)))
            * ((2^(alpha+2) - 4)/(alpha+1))^(1-1/q)
            * [C1(alpha,q)|f'(a)|^q + C2(alpha,q)|f'(G)|^q
               + C3(alpha,q)|f'(b)|^q]^(1/q)
    """
    f = as_function_spec(f)
    _need_interval(interval)
    alpha = FractionalOrder.coerce(alpha).alpha
    exps = q if isinstance(q, HolderExponents) else HolderExponents.from_q(q)
    q = exps.q
    config = config or DEFAULT_CONFIG
    if check:
        _certify_weight(g, interval, plan)
        _certify_deriv(f, interval, q, plan)

    lhs, lhs_err = _weighted_gap(f, g, interval, alpha, config)
    gsup = sup_norm(g, interval)
    cc = c_constants_alpha_q(interval, alpha, q, config)
    da, dg, db = _endpoint_derivs(f, interval)
    w = interval.logwidth
    pre = (w ** (alpha + 1.0) * gsup
           / (2.0 ** (alpha + 1.0) * gamma(alpha + 1.0)))
    pre *= ((2.0 ** (alpha + 2.0) - 4.0) / (alpha + 1.0)) ** (1.0 - 1.0 / q)
    bracket = cc.c1 * da ** q + cc.c2 * dg ** q + cc.c3 * db ** q
    bracket_err = cc.error_estimate * max(da, dg, db) ** q
    rhs = pre * bracket ** (1.0 / q)
    rhs_err = pre * ((bracket + bracket_err) ** (1.0 / q)
                     - bracket ** (1.0 / q))

    params = _spec_params(f)
    params.update(g=_maybe_text(value_function(g)), a=interval.a,
                  b=interval.b, alpha=alpha, q=q)
    return InequalityReport.build(
        "corollary3", params, lhs, rhs,
        quad_errors=(lhs_err, rhs_err), seed=seed, case_index=case_index,
    )


def _log_average(f, interval, config):
    """(1/W) int_a^b f(x)/x dx and its error estimate."""
    fval = value_function(f)
    if fval.ast is not None:
        integrand = en.div(fval.ast, X)
    else:
        def integrand(xs):
            xs = np.asarray(xs, dtype=np.float64)
            return fval.vec(xs) / xs
    res = integrate(integrand, interval.a, interval.b, config)
    w = interval.logwidth
    return res.value / w, res.error_estimate / w


def corollary4_verify(f, interval, q, config=None, *, check=True, plan=None,
                      seed=0, case_index=0):
    """Power-mean trapezoid bound at alpha = 1 with the normalized
    weight, q > 1:

        |A(f(a), f(b)) - (1/W) int f(x)/x dx|
            <= (W / 2^(1+1/q)) [C1(1,q)|f'(a)|^q + C2(1,q)|f'(G)|^q
                                + C3(1,q)|f'(b)|^q]^(1/q)
    """
    f = as_function_spec(f)
    _need_interval(interval)
    exps = q if isinstance(q, HolderExponents) else HolderExponents.from_q(q)
    q = exps.q
    config = config or DEFAULT_CONFIG
    if check:
        _certify_deriv(f, interval, q, plan)

    trap = 0.5 * (f(interval.a) + f(interval.b))
    mean, mean_err = _log_average(f, interval, config)
    lhs = abs(trap - mean)
    cc = c_constants_alpha_q(interval, 1.0, q, config)
    da, dg, db = _endpoint_derivs(f, interval)
    bracket = cc.c1 * da ** q + cc.c2 * dg ** q + cc.c3 * db ** q
    bracket_err = cc.error_estimate * max(da, dg, db) ** q
    pre = interval.logwidth / 2.0 ** (1.0 + 1.0 / q)
    rhs = pre * bracket ** (1.0 / q)
    rhs_err = pre * ((bracket + bracket_err) ** (1.0 / q)
                     - bracket ** (1.0 / q))

    params = _spec_params(f)
    params.update(a=interval.a, b=interval.b, q=q)
    return InequalityReport.build(
        "corollary4", params, lhs, rhs,
        quad_errors=(mean_err, rhs_err), seed=seed, case_index=case_index,
    )


def hh_ga_verify(f, interval, s=None, config=None, *, check=True, plan=None,
                 seed=0, case_index=0):
    """Direct Hermite-Hadamard check for (s-)GA-convex f:

        2^(s-1) f(G) <= (1/W) int f(x)/x dx <= (f(a) + f(b))/(s + 1)

    with s = 1 the plain GA case.  The report's lhs/rhs are the binding
    pair: the side of the sandwich with the smaller slack.
    """
    f = as_function_spec(f)
    _need_interval(interval)
    config = config or DEFAULT_CONFIG
    if s is not None:
        s = float(s)
        if not 0.0 < s <= 1.0:
            raise ValueError(f"s must lie in (0, 1], got {s!r}")
    if check:
        if s is None:
            _require(check_ga_convex(f, interval, plan or DEFAULT_PLAN),
                     "GA-convexity of f")
        else:
            _require(check_s_ga_convex(f, interval, s, plan or DEFAULT_PLAN),
                     f"s-GA-convexity of f (s = {s:g})")

    s_eff = 1.0 if s is None else s
    lower = 2.0 ** (s_eff - 1.0) * f(interval.G)
    mean, mean_err = _log_average(f, interval, config)
    upper = (f(interval.a) + f(interval.b)) / (s_eff + 1.0)
    if mean - lower <= upper - mean:
        lhs, rhs = lower, mean
    else:
        lhs, rhs = mean, upper

    params = _spec_params(f)
    params.update(a=interval.a, b=interval.b, s=s_eff, lower=lower,
                  mean=mean, upper=upper)
    return InequalityReport.build(
        "hh_ga", params, lhs, rhs, quad_errors=(mean_err,), seed=seed,
        case_index=case_index,
    )


def _endpoint_gap(f, interval, config):
    """|b f(b) - a f(a) - int_a^b f dx| and its error estimate."""
    fval = value_function(f)
    integrand = fval.ast if fval.ast is not None else fval.vec
    res = integrate(integrand, interval.a, interval.b, config)
    value = (interval.b * fval.at(interval.b)
             - interval.a * fval.at(interval.a) - res.value)
    return abs(value), res.error_estimate


def zhang_bounds(f, interval, which, q=1.0, p=None, config=None, *,
                 check=True, plan=None, seed=0, case_index=0):
    """Endpoint-weighted bounds on |b f(b) - a f(a) - int f dx| for
    |f'|^q GA-convex, via logarithmic means of endpoint powers.

    which = 'thm1' (q >= 1):
        ((b-a) A(a,b))^(1-1/q) / 2^(1/q)
            * ([L(a^2,b^2) - a^2]|f'(a)|^q + [b^2 - L(a^2,b^2)]|f'(b)|^q)^(1/q)
    which = 'thm2' (q > 1), with r = 2q/(q-1):
        W L(a^r, b^r)^(1-1/q) A(|f'(a)|^q, |f'(b)|^q)^(1/q)
    which = 'thm3' (q > 1, 0 < p < 2q), with r = (2q-p)/(q-1):
        W^(1-1/q) / p^(1/q) * L(a^r, b^r)^(1-1/q)
            * ([L(a^p,b^p) - a^p]|f'(a)|^q + [b^p - L(a^p,b^p)]|f'(b)|^q)^(1/q)
    """
    f = as_function_spec(f)
    _need_interval(interval)
    config = config or DEFAULT_CONFIG
    q = float(q)
    if which not in ("thm1", "thm2", "thm3"):
        raise ValueError(f"which must be 'thm1', 'thm2', or 'thm3', "
                         f"got {which!r}")
    if which == "thm1":
        if q < 1.0:
            raise ValueError(f"thm1 requires q >= 1, got {q!r}")
    elif q <= 1.0:
        raise ValueError(f"{which} requires q > 1, got {q!r}")
    if which == "thm3":
        if p is None:
            raise ValueError("thm3 requires the exponent p")
        p = float(p)
        if not 0.0 < p < 2.0 * q:
            raise ValueError(f"thm3 requires 0 < p < 2q, got p = {p!r}")
    if check:
        _certify_deriv(f, interval, q, plan)

    lhs, lhs_err = _endpoint_gap(f, interval, config)
    a = interval.a
    b = interval.b
    w = interval.logwidth
    da = abs(f.deriv(a))
    db = abs(f.deriv(b))

    if which == "thm1":
        l2 = logarithmic_mean(a * a, b * b)
        bracket = (l2 - a * a) * da ** q + (b * b - l2) * db ** q
        rhs = (((b - a) * arithmetic_mean(a, b)) ** (1.0 - 1.0 / q)
               / 2.0 ** (1.0 / q) * bracket ** (1.0 / q))
    elif which == "thm2":
        r = 2.0 * q / (q - 1.0)
        rhs = (w * logarithmic_mean(a ** r, b ** r) ** (1.0 - 1.0 / q)
               * arithmetic_mean(da ** q, db ** q) ** (1.0 / q))
    else:
        r = (2.0 * q - p) / (q - 1.0)
        lp = logarithmic_mean(a ** p, b ** p)
        bracket = (lp - a ** p) * da ** q + (b ** p - lp) * db ** q
        rhs = (w ** (1.0 - 1.0 / q) / p ** (1.0 / q)
               * logarithmic_mean(a ** r, b ** r) ** (1.0 - 1.0 / q)
               * bracket ** (1.0 / q))

    params = _spec_params(f)
    params.update(a=a, b=b, which=which, q=q)
    if which == "thm3":
        params["p"] = p
    return InequalityReport.build(
        "zhang", params, lhs, rhs, quad_errors=(lhs_err,), seed=seed,
        case_index=case_index,
    )
