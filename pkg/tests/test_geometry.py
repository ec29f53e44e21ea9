import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from apxpat.errors import DimensionMismatch
from apxpat.geometry import (
    AxisBox,
    Homothety,
    Pattern,
    Point,
    PointSet,
    apply_homothety,
    diameter,
    min_pairwise_distance,
)


def test_point_rejects_nonfinite():
    with pytest.raises(ValueError):
        Point((0.0, float("nan")))
    with pytest.raises(ValueError):
        Point((float("inf"),))


def test_pointset_dimension_uniform():
    with pytest.raises(DimensionMismatch):
        PointSet(2, [(0, 0), (1, 2, 3)])
    with pytest.raises(ValueError):
        PointSet(1, [])


def test_min_pairwise_examples():
    assert min_pairwise_distance(PointSet(1, [(0,), (1,), (3,)])) == 1.0
    assert min_pairwise_distance(PointSet(2, [(0, 0), (3, 4)])) == 5.0
    # {1, 1/8, 1/64}: closest pair is 1/8 - 1/64 = 7/64
    s = PointSet(1, [(1.0,), (0.125,), (0.015625,)])
    assert min_pairwise_distance(s) == pytest.approx(7 / 64, rel=1e-15)
    with pytest.raises(ValueError):
        min_pairwise_distance(PointSet(1, [(0,)]))


def test_diameter_examples():
    assert diameter(PointSet(1, [(0,), (1,), (3,)])) == 3.0
    assert diameter(PointSet(2, [(0, 0), (1, 0), (0, 1)])) == pytest.approx(math.sqrt(2))


def test_diameter_at_least_min_pairwise_random():
    import random

    rng = random.Random(42)
    s = PointSet(2, [(rng.random(), rng.random()) for _ in range(100)])
    assert diameter(s) >= min_pairwise_distance(s)


def test_pattern_rejects_duplicates_and_caches():
    with pytest.raises(ValueError):
        Pattern(2, [(0, 0), (0, 0)])
    p = Pattern(1, [(0,), (1,), (3,)])
    assert p.min_pairwise == 1.0
    assert p.diameter == 3.0


def test_apply_homothety_examples():
    p = Pattern(2, [(0, 0), (1, 0)])
    ident = apply_homothety(Homothety((0, 0), 1.0), p)
    assert [pt.coords for pt in ident] == [(0.0, 0.0), (1.0, 0.0)]
    moved = apply_homothety(Homothety((1, 1), 2.0), p)
    assert [pt.coords for pt in moved] == [(1.0, 1.0), (3.0, 1.0)]
    with pytest.raises(DimensionMismatch):
        apply_homothety(Homothety((0,), 1.0), p)


def test_homothety_scale_positive():
    with pytest.raises(ValueError):
        Homothety((0, 0), 0.0)
    with pytest.raises(ValueError):
        Homothety((0, 0), -2.0)
    with pytest.raises(ValueError):
        AxisBox((0, 0), 0.0)


@given(
    lam=st.floats(min_value=1e-3, max_value=10.0),
    ax=st.floats(min_value=-50, max_value=50),
    ay=st.floats(min_value=-50, max_value=50),
)
@settings(max_examples=50, deadline=None)
def test_homothety_scales_min_pairwise(lam, ax, ay):
    p = Pattern(2, [(0, 0), (1, 0), (0, 2), (3, 3)])
    out = apply_homothety(Homothety((ax, ay), lam), p)
    assert min_pairwise_distance(out) == pytest.approx(lam * p.min_pairwise, rel=1e-12)
    assert diameter(out) == pytest.approx(lam * p.diameter, rel=1e-12)


def test_metrics_invariant_under_translation_and_rotation():
    pts = [(0.3, 1.2), (2.0, -0.7), (1.1, 0.4), (-2.2, 0.9)]
    s = PointSet(2, pts)
    m0, d0 = min_pairwise_distance(s), diameter(s)
    th = 0.7321
    ca, sa = math.cos(th), math.sin(th)
    moved = PointSet(2, [(ca * x - sa * y + 5.0, sa * x + ca * y - 3.0) for x, y in pts])
    assert min_pairwise_distance(moved) == pytest.approx(m0, rel=1e-12)
    assert diameter(moved) == pytest.approx(d0, rel=1e-12)


@given(lam=st.floats(min_value=1e-3, max_value=10.0))
@settings(max_examples=30, deadline=None)
def test_homothety_preserves_distance_ratios(lam):
    p = Pattern(2, [(0, 0), (1, 0), (0.5, 2.5), (4, 1)])
    out = apply_homothety(Homothety((1, -2), lam), p)
    k = len(p)
    for i in range(k):
        for j in range(i + 1, k):
            orig = math.dist(p[i].coords, p[j].coords)
            img = math.dist(out[i].coords, out[j].coords)
            assert img / orig == pytest.approx(lam, rel=1e-12)
