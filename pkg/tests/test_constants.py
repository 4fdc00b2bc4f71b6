"""Tests for the bound constants against frozen closed-form oracles.

The reference values below were derived once by elementary
antidifferentiation and are asserted as exact expressions, not decimals:
on (a, b) = (1, e^2) the geodesics are L(t) = e^(1-t), U(t) = e^(1+t),
and every defining integral reduces to polynomial-times-exponential
form.
"""

import math

import numpy as np
import pytest

from gafrac import (
    HolderExponents,
    Interval,
    QuadratureConfig,
    c_constants_alpha,
    c_constants_alpha_q,
    corollary2_closed_forms,
    parse,
    sup_norm,
    zeta_constants,
)

E = math.e
IV_REF = Interval(1.0, E ** 2)  # G = e, W = 2
TIGHT = QuadratureConfig(abs_tol=1e-12, rel_tol=1e-12)


# -- zeta constants ---------------------------------------------------------

def test_zeta_constant_weight():
    # h = 1: |2h - h(b)| = 1, so the zetas are plain geodesic moments.
    #   zeta1 = int t e^(1-t) dt = e - 2
    #   zeta2 = int (1-t)(e^(1-t) + e^(1+t)) dt = (e-1)^2
    #   zeta3 = int t e^(1+t) dt = e
    z = zeta_constants(parse("1"), IV_REF, TIGHT)
    assert z.zeta1 == pytest.approx(E - 2.0, rel=1e-11)
    assert z.zeta2 == pytest.approx((E - 1.0) ** 2, rel=1e-11)
    assert z.zeta3 == pytest.approx(E, rel=1e-11)


def test_zeta_iteration_order():
    z = zeta_constants(parse("1"), IV_REF, TIGHT)
    assert tuple(z) == (z.zeta1, z.zeta2, z.zeta3)


def test_zeta_with_kinked_weight():
    # h(x) = x on (1, e^2): 2h(L) - h(b) = 2e^(1-t) - e^2 crosses zero at
    # t = 1 - ln(e^2/2) = ln(2) - 1 < 0, so no kink on the lower branch;
    # the upper branch 2e^(1+t) - e^2 crosses at t = 1 - ln 2.  Cross-check
    # the whole computation against scipy with explicit absolute values.
    from scipy.integrate import quad

    z = zeta_constants(parse("x"), IV_REF, TIGHT)
    hb = E ** 2

    def lower(t):
        return math.exp(1.0 - t)

    def upper(t):
        return math.exp(1.0 + t)

    cut = 1.0 - math.log(2.0)
    w1, _ = quad(lambda t: t * lower(t) * abs(2 * lower(t) - hb), 0, 1)
    w2a, _ = quad(lambda t: (1 - t) * lower(t) * abs(2 * lower(t) - hb), 0, 1)
    w2b, _ = quad(lambda t: (1 - t) * upper(t) * abs(2 * upper(t) - hb),
                  0, 1, points=[cut])
    w3, _ = quad(lambda t: t * upper(t) * abs(2 * upper(t) - hb), 0, 1,
                 points=[cut])
    assert z.zeta1 == pytest.approx(w1, rel=1e-9)
    assert z.zeta2 == pytest.approx(w2a + w2b, rel=1e-9)
    assert z.zeta3 == pytest.approx(w3, rel=1e-9)


def test_zeta_requires_expression_weight():
    with pytest.raises(TypeError):
        zeta_constants(lambda x: x, IV_REF)


# -- C constants, exact and relaxed kernels ---------------------------------

def test_exact_constants_alpha_one_reference():
    # Kernel (1+t) - (1-t) = 2t at alpha = 1:
    #   C1 = 2 int t^2 e^(1-t) dt      = 2(2e - 5)
    #   C2 = 2 int t(1-t)(e^(1-t) + e^(1+t)) dt = 2(3 + 2e - e^2)
    #   C3 = 2 int t^2 e^(1+t) dt      = 2(e^2 - 2e)
    cc = c_constants_alpha(IV_REF, 1.0, "exact", TIGHT)
    assert cc.c1 == pytest.approx(2.0 * (2.0 * E - 5.0), rel=1e-11)
    assert cc.c2 == pytest.approx(2.0 * (3.0 + 2.0 * E - E ** 2), rel=1e-11)
    assert cc.c3 == pytest.approx(2.0 * (E ** 2 - 2.0 * E), rel=1e-11)


def test_relaxed_constants_alpha_one_reference():
    # Kernel t^1: exactly half the alpha = 1 exact values.
    cc = c_constants_alpha(IV_REF, 1.0, "relaxed", TIGHT)
    assert cc.c1 == pytest.approx(2.0 * E - 5.0, rel=1e-11)
    assert cc.c2 == pytest.approx(3.0 + 2.0 * E - E ** 2, rel=1e-11)
    assert cc.c3 == pytest.approx(E ** 2 - 2.0 * E, rel=1e-11)


def test_second_constant_oracle_identity():
    # Independent derivation of C2 relaxed at alpha = 1 on (1, e^2):
    # 2e(1 + cosh 1 - 2 sinh 1) equals 3 + 2e - e^2 identically.
    lhs = 2.0 * E * (1.0 + math.cosh(1.0) - 2.0 * math.sinh(1.0))
    rhs = 3.0 + 2.0 * E - E ** 2
    assert lhs == pytest.approx(rhs, rel=1e-14)
    cc = c_constants_alpha(IV_REF, 1.0, "relaxed", TIGHT)
    assert cc.c2 == pytest.approx(lhs, rel=1e-11)


def test_exact_equals_twice_relaxed_only_at_alpha_one():
    # (1+t)^1 - (1-t)^1 = 2t exactly; for fractional alpha the kernels
    # genuinely differ.
    iv = Interval(0.5, 3.0)
    exact = c_constants_alpha(iv, 1.0, "exact", TIGHT)
    relaxed = c_constants_alpha(iv, 1.0, "relaxed", TIGHT)
    for e_val, r_val in zip(exact, relaxed):
        assert e_val == pytest.approx(2.0 * r_val, rel=1e-11)

    exact_frac = c_constants_alpha(iv, 0.5, "exact", TIGHT)
    relaxed_frac = c_constants_alpha(iv, 0.5, "relaxed", TIGHT)
    ratio = exact_frac.c1 / relaxed_frac.c1
    assert abs(ratio - 2.0 ** 0.5) > 1e-3  # not the naive 2^alpha either


def test_exact_kernel_scipy_oracle_fractional_alpha():
    from scipy.integrate import quad

    iv = Interval(1.3, 6.2)
    g = iv.G
    la, lb, lg = math.log(iv.a), math.log(iv.b), math.log(g)

    def lower(t):
        return math.exp(lg + t * (la - lg))

    def upper(t):
        return math.exp(lg + t * (lb - lg))

    for alpha in (0.3, 0.8, 1.4, 2.0):
        def kern(t, alpha=alpha):
            return (1.0 + t) ** alpha - (1.0 - t) ** alpha

        want1, _ = quad(lambda t: kern(t) * t * lower(t), 0, 1)
        want2, _ = quad(lambda t: kern(t) * (1 - t) * (lower(t) + upper(t)),
                        0, 1)
        want3, _ = quad(lambda t: kern(t) * t * upper(t), 0, 1)
        cc = c_constants_alpha(iv, alpha, "exact", TIGHT)
        assert cc.c1 == pytest.approx(want1, rel=1e-9), alpha
        assert cc.c2 == pytest.approx(want2, rel=1e-9), alpha
        assert cc.c3 == pytest.approx(want3, rel=1e-9), alpha


def test_relaxed_kernel_scipy_oracle_fractional_alpha():
    from scipy.integrate import quad

    iv = Interval(0.7, 2.9)
    g = iv.G
    la, lb, lg = math.log(iv.a), math.log(iv.b), math.log(g)

    def lower(t):
        return math.exp(lg + t * (la - lg))

    def upper(t):
        return math.exp(lg + t * (lb - lg))

    alpha = 0.45
    want1, _ = quad(lambda t: t ** (alpha + 1.0) * lower(t), 0, 1)
    want2, _ = quad(
        lambda t: (1.0 - t) * t ** alpha * (lower(t) + upper(t)), 0, 1)
    want3, _ = quad(lambda t: t ** (alpha + 1.0) * upper(t), 0, 1)
    cc = c_constants_alpha(iv, alpha, "relaxed", TIGHT)
    assert cc.c1 == pytest.approx(want1, rel=1e-9)
    assert cc.c2 == pytest.approx(want2, rel=1e-9)
    assert cc.c3 == pytest.approx(want3, rel=1e-9)


def test_relaxed_requires_unit_alpha():
    with pytest.raises(ValueError):
        c_constants_alpha(IV_REF, 1.2, "relaxed")


def test_unknown_variant_rejected():
    with pytest.raises(ValueError):
        c_constants_alpha(IV_REF, 0.5, "loose")


def test_constants_scale_law():
    # Substituting x -> c x scales every geodesic value by c, so
    # C_i(c a, c b) = c C_i(a, b) (plain) and c^q C_i (q-weighted).
    rng = np.random.default_rng(np.random.SeedSequence(31))
    for _ in range(6):
        a = float(rng.uniform(0.3, 2.0))
        b = a * float(math.exp(rng.uniform(0.3, 2.0)))
        c = float(rng.uniform(0.2, 4.0))
        alpha = float(rng.uniform(0.2, 1.9))
        base = c_constants_alpha(Interval(a, b), alpha, "exact", TIGHT)
        scaled = c_constants_alpha(Interval(c * a, c * b), alpha, "exact",
                                   TIGHT)
        for s_val, b_val in zip(scaled, base):
            assert s_val == pytest.approx(c * b_val, rel=1e-10)

        q = 2.0
        base_q = c_constants_alpha_q(Interval(a, b), alpha, q, TIGHT)
        scaled_q = c_constants_alpha_q(Interval(c * a, c * b), alpha, q,
                                       TIGHT)
        for s_val, b_val in zip(scaled_q, base_q):
            assert s_val == pytest.approx(c ** q * b_val, rel=1e-10)


def test_constants_reciprocal_interval_law():
    # The scale law at c = 1/(ab) sends (a, b) to (1/b, 1/a):
    # a b C_i(1/b, 1/a) = C_i(a, b), same index on both sides.
    iv = IV_REF
    rec = Interval(1.0 / iv.b, 1.0 / iv.a)
    for alpha in (0.6, 1.0):
        base = c_constants_alpha(iv, alpha, "exact", TIGHT)
        mirrored = c_constants_alpha(rec, alpha, "exact", TIGHT)
        for m_val, b_val in zip(mirrored, base):
            assert iv.a * iv.b * m_val == pytest.approx(b_val, rel=1e-10)


# -- q-weighted constants ---------------------------------------------------

def test_q_constants_reference_value():
    # C1(1, q=2) on (1, e^2) = 2 int t^2 e^(2(1-t)) dt = (e^2 - 5)/2.
    cc = c_constants_alpha_q(IV_REF, 1.0, 2.0, TIGHT)
    assert cc.c1 == pytest.approx((E ** 2 - 5.0) / 2.0, rel=1e-11)


def test_q_one_reduces_to_exact_variant():
    iv = Interval(0.9, 4.2)
    for alpha in (0.5, 1.0, 1.7):
        plain = c_constants_alpha(iv, alpha, "exact", TIGHT)
        weighted = c_constants_alpha_q(iv, alpha, 1.0, TIGHT)
        for p_val, w_val in zip(plain, weighted):
            assert w_val == pytest.approx(p_val, rel=1e-11), alpha


def test_q_constants_scipy_oracle():
    from scipy.integrate import quad

    iv = Interval(1.1, 3.3)
    g = iv.G
    la, lb, lg = math.log(iv.a), math.log(iv.b), math.log(g)
    alpha, q = 0.7, 3.0

    def kern(t):
        return (1.0 + t) ** alpha - (1.0 - t) ** alpha

    def lower_q(t):
        return math.exp(q * (lg + t * (la - lg)))

    def upper_q(t):
        return math.exp(q * (lg + t * (lb - lg)))

    want1, _ = quad(lambda t: kern(t) * t * lower_q(t), 0, 1)
    want2, _ = quad(lambda t: kern(t) * (1 - t) * (lower_q(t) + upper_q(t)),
                    0, 1)
    want3, _ = quad(lambda t: kern(t) * t * upper_q(t), 0, 1)
    cc = c_constants_alpha_q(iv, alpha, q, TIGHT)
    assert cc.c1 == pytest.approx(want1, rel=1e-9)
    assert cc.c2 == pytest.approx(want2, rel=1e-9)
    assert cc.c3 == pytest.approx(want3, rel=1e-9)


def test_q_constants_reject_sub_one():
    with pytest.raises(ValueError):
        c_constants_alpha_q(IV_REF, 1.0, 0.8)


# -- closed forms -----------------------------------------------------------

def test_closed_forms_reference_interval():
    c1, c2, c3 = corollary2_closed_forms(IV_REF)
    assert c1 == pytest.approx(2.0 * E - 5.0, rel=1e-12)
    assert c2 == pytest.approx(3.0 + 2.0 * E - E ** 2, rel=1e-12)
    assert c3 == pytest.approx(E ** 2 - 2.0 * E, rel=1e-12)


def test_closed_forms_match_quadrature():
    rng = np.random.default_rng(np.random.SeedSequence(12))
    for _ in range(10):
        la = float(rng.uniform(-1.5, 1.5))
        w = float(rng.uniform(0.15, 4.0))
        iv = Interval(math.exp(la), math.exp(la + w))
        closed = corollary2_closed_forms(iv)
        quad_c = c_constants_alpha(iv, 1.0, "relaxed", TIGHT)
        for c_val, q_val in zip(closed, quad_c):
            assert c_val == pytest.approx(q_val, rel=1e-10)


def test_closed_forms_reject_degenerate_interval():
    with pytest.raises(ValueError):
        corollary2_closed_forms(Interval(1.0, 1.0 + 1e-5))


# -- sup norm ---------------------------------------------------------------

def test_sup_norm_monotone_function():
    assert sup_norm(parse("x"), Interval(1.0, 2.0)) == pytest.approx(
        2.0, rel=1e-12)


def test_sup_norm_interior_maximum():
    # |g| peaks at x = e^1 inside (1, e^2) with value 1.
    g = parse(f"exp(-(ln(x) - 1)^2)")
    assert sup_norm(g, IV_REF) == pytest.approx(1.0, rel=1e-10)


def test_sup_norm_uses_absolute_value():
    assert sup_norm(parse("-3*x"), Interval(1.0, 2.0)) == pytest.approx(
        6.0, rel=1e-12)


def test_sup_norm_off_grid_peak():
    # Narrow bump centred off any uniform grid point.
    centre = math.log(2.0) + 0.123456789
    g = parse(f"exp(-400*(ln(x) - {centre!r})^2)")
    iv = Interval(1.0, 10.0)
    assert sup_norm(g, iv) == pytest.approx(1.0, rel=1e-8)


def test_sup_norm_validation():
    with pytest.raises(ValueError):
        sup_norm(parse("x"), Interval(1.0, 2.0), samples=4)
    from gafrac import GafracError
    with pytest.raises(GafracError):
        sup_norm(parse("ln(x - 1.5)"), Interval(1.0, 2.0))


# -- Holder exponents -------------------------------------------------------

def test_holder_exponents():
    h = HolderExponents.from_q(2.0)
    assert h.p == 2.0
    h = HolderExponents.from_q(3.0)
    assert h.p == pytest.approx(1.5, rel=1e-15)
    with pytest.raises(ValueError):
        HolderExponents.from_q(1.0)
    with pytest.raises(ValueError):
        HolderExponents(2.0, 3.0)  # not conjugate
    with pytest.raises(ValueError):
        HolderExponents(0.5, -1.0)
