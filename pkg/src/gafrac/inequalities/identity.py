"""The integral identity behind the trapezoid bounds.

For differentiable f and h on [a, b], with W = ln(b/a), G = sqrt(ab)
and the geodesics L(t) = a^t G^(1-t), U(t) = b^t G^(1-t):

    (h(b) - 2h(a)) f(a)/2 + h(b) f(b)/2 - int_a^b f(x) h'(x) dx
        = (W/4) { int_0^1 (2h(L) - h(b)) f'(L) L dt
                + int_0^1 (2h(U) - h(b)) f'(U) U dt }.

Every trapezoid bound in this package estimates the right side of this
identity, so checking the identity itself to quadrature precision is
the base calibration: lemma1_residual returns |LHS - RHS| and should
sit at roundoff for smooth inputs.

Both sides compose expression ASTs when the inputs carry symbolic
derivatives; finite-difference specs fall back to vectorised closures.
"""

from __future__ import annotations

from ..expr import nodes as en
from ..expr.nodes import Num
from ..funcspec import as_function_spec, value_function
from ..interval import Interval
from ..quadrature import DEFAULT_CONFIG, integrate
from .constants import geodesic_asts

__all__ = ["lemma1_residual", "trapezoid_functional", "geodesic_side"]


def _symbolic(spec):
    return spec.derivative_mode == "symbolic"


def trapezoid_functional(f, h, interval, config=None):
    """The left side of the identity: the h-weighted trapezoid value of
    f minus int f h' dx.  Returns (value, quadrature error estimate)."""
    f = as_function_spec(f)
    h = as_function_spec(h)
    if not isinstance(interval, Interval):
        raise TypeError("interval must be an Interval")
    config = config or DEFAULT_CONFIG
    a = interval.a
    b = interval.b

    fa = f(a)
    fb = f(b)
    ha = h(a)
    hb = h(b)
    if _symbolic(h):
        integrand = en.mul(f.value, h.derivative)
    else:
        fv = value_function(f)

        def integrand(xs):
            return fv.vec(xs) * h.deriv(xs)

    res = integrate(integrand, a, b, config)
    value = (hb - 2.0 * ha) * fa / 2.0 + hb * fb / 2.0 - res.value
    return value, res.error_estimate


def geodesic_side(f, h, interval, config=None):
    """The right side of the identity: (W/4) times the two geodesic
    integrals.  Returns (value, quadrature error estimate)."""
    f = as_function_spec(f)
    h = as_function_spec(h)
    if not isinstance(interval, Interval):
        raise TypeError("interval must be an Interval")
    config = config or DEFAULT_CONFIG
    hb = h(interval.b)

    lower_ast, upper_ast = geodesic_asts(interval)
    total = 0.0
    err = 0.0
    for point_ast, walk in (
        (lower_ast, interval.geodesic_lower),
        (upper_ast, interval.geodesic_upper),
    ):
        if _symbolic(f) and _symbolic(h):
            h_on = en.substitute(h.value, point_ast)
            df_on = en.substitute(f.derivative, point_ast)
            integrand = en.mul(
                en.sub(en.mul(Num(2.0), h_on), Num(hb)),
                en.mul(df_on, point_ast),
            )
        else:
            hv = value_function(h)

            def integrand(ts, walk=walk):
                xs = walk(ts)
                return (2.0 * hv.vec(xs) - hb) * f.deriv(xs) * xs

        res = integrate(integrand, 0.0, 1.0, config)
        total += res.value
        err += res.error_estimate
    return interval.logwidth / 4.0 * total, err


def lemma1_residual(f, h, interval, config=None):
    """|LHS - RHS| of the identity, both sides by quadrature."""
    lhs, _ = trapezoid_functional(f, h, interval, config)
    rhs, _ = geodesic_side(f, h, interval, config)
    return abs(lhs - rhs)
