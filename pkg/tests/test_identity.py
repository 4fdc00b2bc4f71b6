"""Tests for the base integral identity.

Every trapezoid bound rests on one exact identity between a weighted
trapezoid functional and two geodesic integrals; these tests pin both
sides to a hand-computed anchor and then push the residual to roundoff
across random smooth inputs.
"""

import math

import numpy as np
import pytest

from gafrac import (
    FunctionSpec,
    Interval,
    QuadratureConfig,
    lemma1_residual,
    parse,
    random_ga_convex,
    random_log_polynomial,
)
from gafrac.inequalities import geodesic_side, trapezoid_functional

TIGHT = QuadratureConfig(abs_tol=1e-12, rel_tol=1e-12)


def test_anchor_value_both_sides():
    # f = ln x, h = x on [1, e].  LHS:
    #   (e - 2)*0/2 + e*1/2 - int_1^e ln(x) dx = e/2 - 1.
    # The right side must land on the same number independently.
    iv = Interval(1.0, math.e)
    want = math.e / 2.0 - 1.0
    lhs, lhs_err = trapezoid_functional("ln(x)", "x", iv, TIGHT)
    rhs, rhs_err = geodesic_side("ln(x)", "x", iv, TIGHT)
    assert lhs == pytest.approx(want, abs=1e-12)
    assert rhs == pytest.approx(want, abs=1e-12)
    assert lhs_err < 1e-10
    assert rhs_err < 1e-10


def test_residual_smooth_specs():
    cases = [
        ("ln(x)^2", "x^2", Interval(1.0, math.e ** 2)),
        ("x + 1/x", "ln(x)", Interval(0.5, 3.0)),
        ("exp(ln(x)^2/4)", "x", Interval(1.0, 4.0)),
        ("sin(ln(x))", "cos(ln(x))", Interval(1.0, 2.0)),
    ]
    for f_text, h_text, iv in cases:
        assert lemma1_residual(f_text, h_text, iv, TIGHT) <= 1e-12, (
            f_text, h_text)


def test_constant_f_exact_zero():
    # f' = 0 kills the geodesic side; the trapezoid side telescopes:
    # (h(b) - 2h(a)) c/2 + h(b) c/2 - c (h(b) - h(a)) = 0.
    iv = Interval(1.0, 5.0)
    lhs, _ = trapezoid_functional("3", "x^2 + 1", iv, TIGHT)
    rhs, _ = geodesic_side("3", "x^2 + 1", iv, TIGHT)
    assert rhs == 0.0
    assert abs(lhs) < 1e-12


def test_accepts_specs_and_asts():
    iv = Interval(1.0, math.e)
    want = math.e / 2.0 - 1.0
    spec_f = FunctionSpec(parse("ln(x)"))
    lhs, _ = trapezoid_functional(spec_f, parse("x"), iv, TIGHT)
    assert lhs == pytest.approx(want, abs=1e-12)


def test_rejects_bare_callables():
    iv = Interval(1.0, 2.0)
    with pytest.raises(TypeError):
        trapezoid_functional(lambda x: x, "x", iv)
    with pytest.raises(TypeError):
        geodesic_side("x", lambda x: x, iv)
    with pytest.raises(TypeError):
        lemma1_residual("x", "x", (1.0, 2.0))


def test_finite_difference_derivative_mode():
    # Specs without a symbolic derivative route through central
    # differences; the quadrature tolerance must sit above the FD noise
    # floor (~1e-9) or adaptive refinement chases roundoff forever.
    iv = Interval(1.0, math.e ** 2)
    f = FunctionSpec.from_text("ln(x)^2", derivative_mode="finite_difference")
    h = FunctionSpec.from_text("x", derivative_mode="finite_difference")
    assert f.derivative_mode == "finite_difference"
    loose = QuadratureConfig(abs_tol=1e-8, rel_tol=1e-8)
    assert lemma1_residual(f, h, iv, loose) <= 1e-6


def test_residual_random_smooth_pairs():
    rng = np.random.default_rng(np.random.SeedSequence(77))
    for k in range(12):
        la = float(rng.uniform(-1.0, 1.0))
        w = float(rng.uniform(0.2, 2.5))
        iv = Interval(math.exp(la), math.exp(la + w))
        f = random_ga_convex(int(rng.integers(2 ** 31)), iv)
        h = random_log_polynomial(int(rng.integers(2 ** 31)), iv, degree=3)
        assert lemma1_residual(f, h, iv, TIGHT) <= 1e-7, k


def test_sides_carry_error_estimates():
    iv = Interval(1.0, 7.0)
    _, e1 = trapezoid_functional("ln(x)^2", "x", iv, TIGHT)
    _, e2 = geodesic_side("ln(x)^2", "x", iv, TIGHT)
    assert 0.0 <= e1 < 1e-9
    assert 0.0 <= e2 < 1e-9
