"""Seeded generators of structured random test functions.

All three generators build expression ASTs (so everything downstream
runs compiled) and are bit-deterministic in (seed, arguments).

* random_ga_convex: f(x) = phi(ln x) with phi a convex combination of
  affine, quadratic, and softplus-hinge terms; GA-convex by construction
  since GA-convexity of f is ordinary convexity of phi.

* random_ga_convex_derivative: f with GA-convex *derivative*.  Built
  backwards: pick a positive convex polynomial phi and return
  f(x) = x * P(ln x) with P = phi - phi' + phi'' - ..., so that
  f'(x) = (P + P')(ln x) = phi(ln x) > 0.  The stored derivative AST is
  phi(ln x) itself, making |f'| and |f'|^q (q >= 1) GA-convex by
  construction rather than by rejection sampling.

* random_symmetric_weight: positive g with g(a*b/x) = g(x), a sum of
  even functions of ln x - ln G (Gaussian bumps and even powers).
"""

from __future__ import annotations

import math

import numpy as np
from numpy.polynomial import polynomial as npoly

from .expr import nodes as en
from .expr.nodes import Num, X
from .funcspec import FunctionSpec
from .interval import Interval

__all__ = [
    "random_ga_convex",
    "random_ga_convex_derivative",
    "random_log_polynomial",
    "random_symmetric_weight",
]


def _rng(seed):
    return np.random.default_rng(np.random.SeedSequence(int(seed)))


def _horner(coeffs, u_ast):
    """AST for sum coeffs[i]*u^i via Horner's scheme."""
    acc = Num(float(coeffs[-1]))
    for c in reversed(coeffs[:-1]):
        acc = en.add(Num(float(c)), en.mul(u_ast, acc))
    return acc


_LN_X = en.func("ln", X)


def random_ga_convex(seed, interval, roughness=3, ensure_nonneg=False):
    """A random GA-convex FunctionSpec on the interval.

    roughness counts the curved terms added to an affine base; 0 gives
    an affine function of ln x (the flat edge of the family).  With
    ensure_nonneg=True the function is shifted to stay >= 0.1 on the
    interval, which the s-variant inequalities require.
    """
    if not isinstance(interval, Interval):
        raise TypeError("interval must be an Interval")
    roughness = int(roughness)
    if roughness < 0:
        raise ValueError("roughness must be nonnegative")
    rng = _rng(seed)
    u0 = math.log(interval.a)
    u1 = math.log(interval.b)
    span = u1 - u0

    # Affine base in u = ln x.
    c0 = float(rng.uniform(-1.0, 1.0))
    c1 = float(rng.uniform(-2.0, 2.0))
    phi = en.add(Num(c0), en.mul(Num(c1), X))

    for _ in range(roughness):
        w = float(rng.uniform(0.2, 1.5))
        k = float(rng.uniform(u0, u1))
        shifted = en.sub(X, Num(k))
        if rng.uniform() < 0.5:
            # Quadratic bowl w*(u-k)^2.
            term = en.mul(Num(w), en.power(shifted, Num(2.0)))
        else:
            # Softplus hinge w*ln(1+exp(s*(u-k)))/s, sharpness capped so
            # the inner exponential stays far from overflow.
            s = float(rng.uniform(1.0, 3.0))
            s = min(s, 30.0 / (span + 1.0))
            inner = en.func("exp", en.mul(Num(s), shifted))
            term = en.mul(Num(w / s), en.func("ln", en.add(Num(1.0), inner)))
        phi = en.add(phi, term)

    if ensure_nonneg:
        us = np.linspace(u0, u1, 512)
        from .expr.program import compile_ast
        vals = compile_ast(phi).eval(us)
        shift = 0.1 - float(vals.min())
        if shift > 0.0:
            phi = en.add(phi, Num(shift))

    value = en.substitute(phi, _LN_X)
    return FunctionSpec(value)


def random_ga_convex_derivative(seed, interval, roughness=3):
    """A random FunctionSpec whose derivative is GA-convex and positive.

    See the module docstring for the construction; the returned spec's
    derivative AST evaluates to phi(ln x) with phi a positive convex
    polynomial, so |f'|^q is GA-convex for every q >= 1.
    """
    if not isinstance(interval, Interval):
        raise TypeError("interval must be an Interval")
    roughness = max(1, int(roughness))
    rng = _rng(seed)
    u0 = math.log(interval.a)
    u1 = math.log(interval.b)

    # phi as a coefficient vector over the monomial basis in u.
    phi = np.zeros(1)
    phi[0] = float(rng.uniform(0.2, 1.5))
    for _ in range(roughness):
        w = float(rng.uniform(0.1, 1.0))
        k = float(rng.uniform(u0 - 0.5, u1 + 0.5))
        m = int(rng.integers(1, 3))
        phi = npoly.polyadd(phi, w * npoly.polypow([-k, 1.0], 2 * m))

    # P = phi - phi' + phi'' - ... terminates at the degree of phi.
    p = np.array(phi)
    d = np.array(phi)
    sign = -1.0
    while len(d) > 1:
        d = npoly.polyder(d)
        p = npoly.polyadd(p, sign * d)
        sign = -sign

    value = en.mul(X, en.substitute(_horner(p, X), _LN_X))
    derivative = en.substitute(_horner(phi, X), _LN_X)
    return FunctionSpec(value, derivative)


def random_symmetric_weight(seed, interval, bumps=2):
    """A random positive geometrically symmetric FunctionSpec.

    Built from even functions of u - ln G, so g(a*b/x) = g(x) holds
    identically, not just to sampling tolerance.
    """
    if not isinstance(interval, Interval):
        raise TypeError("interval must be an Interval")
    bumps = int(bumps)
    if bumps < 0:
        raise ValueError("bumps must be nonnegative")
    rng = _rng(seed)
    half_w = 0.5 * interval.logwidth

    centred = en.sub(X, Num(math.log(interval.G)))
    d2 = en.power(centred, Num(2.0))
    g = Num(float(rng.uniform(0.2, 1.5)))
    for _ in range(bumps):
        w = float(rng.uniform(0.0, 1.5))
        if rng.uniform() < 0.5:
            # Gaussian bump exp(-k*(u - ln G)^2), width tied to the interval.
            k = float(rng.uniform(0.5, 6.0)) / max(half_w ** 2, 1e-2)
            g = en.add(g, en.mul(Num(w), en.func(
                "exp", en.neg(en.mul(Num(k), d2)))))
        else:
            # Even power ((u - ln G)^2/half_w^2)^m, m in {1, 2}.
            m = int(rng.integers(1, 3))
            scaled = en.div(d2, Num(half_w ** 2))
            g = en.add(g, en.mul(Num(w), en.power(scaled, Num(float(m)))))

    return FunctionSpec(en.substitute(g, _LN_X))


def random_log_polynomial(seed, interval, degree=3, nonneg=False):
    """A random polynomial in ln x as a FunctionSpec.

    Coefficients are uniform in [-1, 1].  With nonneg=True the result is
    shifted to stay >= 0.1 on the interval, matching the nonnegative
    weight hypothesis of the trapezoid bounds.
    """
    if not isinstance(interval, Interval):
        raise TypeError("interval must be an Interval")
    degree = int(degree)
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    rng = _rng(seed)
    coeffs = [float(c) for c in rng.uniform(-1.0, 1.0, degree + 1)]
    poly = _horner(coeffs, X)

    if nonneg:
        us = np.linspace(math.log(interval.a), math.log(interval.b), 512)
        from .expr.program import compile_ast
        vals = compile_ast(poly).eval(us)
        shift = 0.1 - float(vals.min())
        if shift > 0.0:
            poly = en.add(poly, Num(shift))

    return FunctionSpec(en.substitute(poly, _LN_X))
