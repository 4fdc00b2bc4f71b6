"""Tests for the positive interval type and its geodesics."""

import math

import numpy as np
import pytest

from gafrac import Interval


def test_basic_properties():
    iv = Interval(1.0, math.e ** 2)
    assert iv.a == 1.0
    assert iv.b == math.e ** 2
    assert iv.G == pytest.approx(math.e, rel=1e-15)
    assert iv.logwidth == pytest.approx(2.0, rel=1e-15)


@pytest.mark.parametrize("a,b", [(0.0, 1.0), (-1.0, 2.0), (2.0, 2.0),
                                 (3.0, 2.0), (1.0, math.inf),
                                 (math.nan, 2.0)])
def test_rejects_bad_endpoints(a, b):
    with pytest.raises(ValueError):
        Interval(a, b)


def test_geodesic_endpoints():
    iv = Interval(0.5, 8.0)
    g = iv.G
    assert iv.geodesic_lower(0.0) == pytest.approx(g, rel=1e-14)
    assert iv.geodesic_lower(1.0) == pytest.approx(iv.a, rel=1e-14)
    assert iv.geodesic_upper(0.0) == pytest.approx(g, rel=1e-14)
    assert iv.geodesic_upper(1.0) == pytest.approx(iv.b, rel=1e-14)


def test_geodesics_vectorised_and_monotone():
    iv = Interval(2.0, 50.0)
    ts = np.linspace(0.0, 1.0, 101)
    lower = iv.geodesic_lower(ts)
    upper = iv.geodesic_upper(ts)
    assert lower.shape == ts.shape
    # L decreases toward a, U increases toward b.
    assert np.all(np.diff(lower) < 0.0)
    assert np.all(np.diff(upper) > 0.0)
    # Pointwise product L(t) U(t) = a^t b^t G^(2-2t) stays (ab)^... check
    # the closed midpoint: at t, L*U = (ab)^t * G^(2-2t) = (ab).
    assert np.allclose(lower * upper, iv.a * iv.b, rtol=1e-13)


def test_geodesic_matches_power_form():
    iv = Interval(1.5, 12.0)
    rng = np.random.default_rng(np.random.SeedSequence(3))
    for t in rng.uniform(0.0, 1.0, 20):
        t = float(t)
        assert iv.geodesic_lower(t) == pytest.approx(
            iv.a ** t * iv.G ** (1.0 - t), rel=1e-13)
        assert iv.geodesic_upper(t) == pytest.approx(
            iv.b ** t * iv.G ** (1.0 - t), rel=1e-13)


def test_contains_and_log_mesh():
    iv = Interval(1.0, 4.0)
    assert iv.contains(1.0) and iv.contains(4.0) and iv.contains(2.0)
    assert not iv.contains(0.5)
    assert not iv.contains(4.5)
    mesh = iv.log_mesh(9)
    assert mesh[0] == pytest.approx(1.0, rel=1e-15)
    assert mesh[-1] == pytest.approx(4.0, rel=1e-15)
    # Log-uniform: ratios of consecutive points are constant.
    ratios = mesh[1:] / mesh[:-1]
    assert np.allclose(ratios, ratios[0], rtol=1e-12)


def test_frozen():
    iv = Interval(1.0, 2.0)
    with pytest.raises(Exception):
        iv.a = 3.0
