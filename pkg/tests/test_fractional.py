"""Tests for the Hadamard fractional integral operators."""

import math

import numpy as np
import pytest

from gafrac import (
    FractionalOrder,
    GafracError,
    Interval,
    QuadratureConfig,
    gamma,
    hadamard_left,
    hadamard_right,
    parse,
    random_symmetric_weight,
)

TIGHT = QuadratureConfig(abs_tol=1e-12, rel_tol=1e-12)


def test_order_validation():
    assert FractionalOrder(0.5).alpha == 0.5
    assert FractionalOrder(0.5).unit_range
    assert not FractionalOrder(1.5).unit_range
    assert FractionalOrder.coerce(FractionalOrder(2.0)).alpha == 2.0
    for bad in (0.0, -1.0, math.nan, math.inf):
        with pytest.raises(ValueError):
            FractionalOrder(bad)


def test_unit_function_closed_form():
    # J_left(1)(b) = W^alpha / Gamma(alpha + 1).
    iv = Interval(1.0, math.e)
    for alpha in (0.3, 0.5, 1.0, 1.7, 2.0):
        want = iv.logwidth ** alpha / gamma(alpha + 1.0)
        left = hadamard_left(parse("1"), iv, alpha, iv.b, TIGHT)
        right = hadamard_right(parse("1"), iv, alpha, iv.a, TIGHT)
        assert left.value == pytest.approx(want, abs=1e-11)
        assert right.value == pytest.approx(want, abs=1e-11)


def test_alpha_one_reduces_to_log_weighted_integral():
    # J_left(f; alpha=1)(b) = int_a^b f(t) dt/t.
    from scipy.integrate import quad

    iv = Interval(2.0, 7.0)
    res = hadamard_left(parse("x^2"), iv, 1.0, iv.b, TIGHT)
    want, _ = quad(lambda t: t, iv.a, iv.b)  # t^2/t = t
    assert res.value == pytest.approx(want, rel=1e-11)


def test_power_function_closed_form():
    # For f(t) = (ln(t/a))^c: J_left(f)(x)
    #   = Gamma(c+1)/Gamma(c+alpha+1) * (ln(x/a))^(c+alpha).
    iv = Interval(1.0, 5.0)
    c = 2.0
    f = parse("ln(x)^2")  # a = 1 so ln(t/a) = ln t
    for alpha in (0.4, 1.0, 1.6):
        res = hadamard_left(f, iv, alpha, iv.b, TIGHT)
        w = iv.logwidth
        want = gamma(c + 1.0) / gamma(c + alpha + 1.0) * w ** (c + alpha)
        assert res.value == pytest.approx(want, rel=1e-10)


def test_scipy_oracle_fractional_order():
    # Direct quadrature of the defining integral, singular endpoint
    # handled by scipy's weighted algorithm via a change of variables.
    from scipy.integrate import quad

    iv = Interval(1.5, 4.0)
    alpha = 0.6
    x = iv.b
    f = lambda t: math.sin(t) + 2.0

    def integrand(u):
        # u = ln(x/t): t = x e^{-u}, dt/t = -du; kernel u^(alpha-1).
        return u ** (alpha - 1.0) * f(x * math.exp(-u))

    w = math.log(x / iv.a)
    want, _ = quad(integrand, 0.0, w, points=[0.0])
    want /= gamma(alpha)
    res = hadamard_left(lambda t: np.sin(t) + 2.0, iv, alpha, x, TIGHT)
    assert res.value == pytest.approx(want, rel=1e-9)


def test_semigroup_property():
    # J^1(J^1 f)(b) = J^2 f(b): iterate the alpha = 1 operator.
    iv = Interval(1.0, 3.0)
    f = parse("ln(1 + x)")

    def j1(x):
        if x <= iv.a:
            return 0.0
        return hadamard_left(f, iv, 1.0, x, TIGHT).value

    outer = hadamard_left(j1, iv, 1.0, iv.b, TIGHT)
    direct = hadamard_left(f, iv, 2.0, iv.b, TIGHT)
    assert outer.value == pytest.approx(direct.value, rel=1e-8)


def test_transport_equality_for_symmetric_weight():
    # Geometric symmetry g(ab/x) = g(x) swaps the two operators:
    # J_left g(b) = J_right g(a).
    rng = np.random.default_rng(np.random.SeedSequence(5))
    for k in range(5):
        la = float(rng.uniform(-1.0, 1.0))
        iv = Interval(math.exp(la), math.exp(la + float(rng.uniform(0.3, 2.0))))
        g = random_symmetric_weight(int(rng.integers(2 ** 31)), iv, bumps=2)
        alpha = float(rng.uniform(0.2, 1.8))
        left = hadamard_left(g, iv, alpha, iv.b, TIGHT)
        right = hadamard_right(g, iv, alpha, iv.a, TIGHT)
        assert left.value == pytest.approx(right.value, abs=1e-9, rel=1e-9)


def test_endpoint_evaluations_are_exact_zero():
    iv = Interval(1.0, 2.0)
    assert hadamard_left(parse("x"), iv, 0.7, iv.a).value == 0.0
    assert hadamard_right(parse("x"), iv, 0.7, iv.b).value == 0.0


def test_out_of_range_faults():
    iv = Interval(1.0, 2.0)
    with pytest.raises(GafracError):
        hadamard_left(parse("x"), iv, 0.5, 0.5)
    with pytest.raises(GafracError):
        hadamard_right(parse("x"), iv, 0.5, 2.5)
    with pytest.raises(TypeError):
        hadamard_left(parse("x"), (1.0, 2.0), 0.5, 1.5)


def test_interior_point_monotone_in_x():
    # For f >= 0 the left integral grows with x.
    iv = Interval(1.0, 4.0)
    f = parse("1 + sin(x)^2")
    vals = [hadamard_left(f, iv, 0.8, x).value
            for x in (1.5, 2.0, 3.0, 4.0)]
    assert all(v2 > v1 for v1, v2 in zip(vals, vals[1:]))


def test_callable_and_ast_paths_agree():
    iv = Interval(1.0, 3.0)
    ast_res = hadamard_left(parse("exp(x/2)"), iv, 0.9, iv.b, TIGHT)
    call_res = hadamard_left(lambda t: np.exp(t / 2.0), iv, 0.9, iv.b, TIGHT)
    assert ast_res.value == pytest.approx(call_res.value, rel=1e-11)


def test_error_estimate_covers_true_error():
    iv = Interval(1.0, math.e)
    alpha = 0.5
    want = iv.logwidth ** alpha / gamma(alpha + 1.0)
    res = hadamard_left(parse("1"), iv, alpha, iv.b)
    assert abs(res.value - want) <= 10.0 * res.error_estimate + 1e-13
