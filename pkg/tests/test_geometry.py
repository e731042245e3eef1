import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ircgap.geometry import (
    FAMILIES,
    HalfPlane,
    RateRegion,
    contains,
    gap_per_dim,
    hull_union,
    max_sum_rate,
    max_weighted,
    vertices,
)

from oracles import brute_gap, random_region, scipy_vertices


def square(s):
    return RateRegion.from_bounds({(1, 0): s, (0, 1): s})


def test_example_vertices():
    r = RateRegion.from_bounds({(1, 0): 2, (0, 1): 1, (1, 1): 2.5, (2, 1): 4.5})
    v = vertices(r)
    expected = [(0, 0), (2, 0), (2, 0.5), (1.5, 1), (0, 1)]
    assert np.allclose(v, expected)


def test_canonical_keeps_tightest():
    r = RateRegion([HalfPlane(1, 0, 3), HalfPlane(1, 0, 2), HalfPlane(0, 1, 1)])
    assert r.bounds[(1, 0)] == 2


def test_requires_single_rate_bounds():
    with pytest.raises(ValueError):
        RateRegion([HalfPlane(1, 0, 1)])


def test_bad_direction_and_nan():
    with pytest.raises(ValueError):
        HalfPlane(3, 1, 1.0)
    with pytest.raises(ValueError):
        HalfPlane(1, 0, float("nan"))


def test_empty_region():
    r = RateRegion.from_bounds({(1, 0): -1, (0, 1): 1})
    assert r.is_empty
    with pytest.raises(ValueError):
        vertices(r)
    with pytest.raises(ValueError):
        gap_per_dim(square(1), r)


def test_origin_only_region():
    r = RateRegion.from_bounds({f: 0.0 for f in FAMILIES})
    assert np.allclose(vertices(r), [[0, 0]])


def test_gap_examples():
    assert gap_per_dim(square(2), square(1)) == pytest.approx(1.0)
    outer = RateRegion.from_bounds({(1, 0): 2, (0, 1): 2, (1, 1): 3})
    inner = RateRegion.from_bounds({(1, 0): 2, (0, 1): 2, (1, 1): 2})
    assert gap_per_dim(outer, inner) == pytest.approx(0.5)
    assert gap_per_dim(inner, outer) == 0.0


def test_unclipped_gap_is_per_family_deficit():
    outer = RateRegion.from_bounds({(1, 0): 3, (0, 1): 3, (1, 1): 3})
    inner = RateRegion.from_bounds({(1, 0): 0, (0, 1): 3, (1, 1): 2})
    # Clipping lets R1 fall to 0 for free only once the shift reaches 3.
    assert gap_per_dim(outer, inner) == pytest.approx(3.0)
    assert gap_per_dim(outer, inner, clip=False) == pytest.approx(3.0)
    inner2 = RateRegion.from_bounds({(1, 0): 3, (0, 1): 3, (1, 1): 2})
    assert gap_per_dim(outer, inner2, clip=False) == pytest.approx(0.5)


def test_hull_union_example():
    a = RateRegion.from_bounds({(1, 0): 2, (0, 1): 0})
    b = RateRegion.from_bounds({(1, 0): 0, (0, 1): 2})
    h = hull_union([a, b])
    assert h.bounds[(1, 1)] == pytest.approx(2)
    assert max_sum_rate(h) == pytest.approx(2)
    with pytest.raises(ValueError):
        hull_union([])


@given(st.integers(0, 2**32 - 1))
def test_vertices_match_scipy(seed):
    r = random_region(np.random.default_rng(seed))
    ours = {tuple(np.round(p, 7)) for p in vertices(r)}
    ref = {tuple(np.round(p, 7)) for p in scipy_vertices(r)}
    assert ours == ref


@given(st.integers(0, 2**32 - 1))
def test_vertices_ccw_from_origin(seed):
    v = vertices(random_region(np.random.default_rng(seed)))
    assert np.allclose(v[0], 0)
    # Counter-clockwise: every consecutive cross product is nonnegative.
    for i in range(len(v)):
        a, b, c = v[i], v[(i + 1) % len(v)], v[(i + 2) % len(v)]
        u, w = b - a, c - b
        assert u[0] * w[1] - u[1] * w[0] >= -1e-9


@given(st.integers(0, 2**32 - 1))
def test_support_function_is_vertex_max(seed):
    r = random_region(np.random.default_rng(seed))
    rng = np.random.default_rng(seed + 1)
    pts = rng.uniform(0, 10, size=(4000, 2))
    inside = [p for p in pts if contains(r, p)]
    for w in FAMILIES:
        if inside:
            assert max_weighted(r, *w) >= max(np.dot(w, p) for p in inside) - 1e-9


@given(st.integers(0, 2**32 - 1))
def test_hull_contains_members(seed):
    rng = np.random.default_rng(seed)
    rs = [random_region(rng) for _ in range(3)]
    h = hull_union(rs)
    for r in rs:
        assert all(contains(h, p, tol=1e-9) for p in vertices(r))
        assert gap_per_dim(r, h) == 0.0


@settings(max_examples=40)
@given(st.integers(0, 2**32 - 1))
def test_gap_matches_brute_force(seed):
    rng = np.random.default_rng(seed)
    outer, inner = random_region(rng), random_region(rng)
    g = gap_per_dim(outer, inner)
    b = brute_gap(outer, inner, vertices(outer))
    assert abs(g - b) <= 2e-3


@given(st.integers(0, 2**32 - 1))
def test_shift_by_gap_lands_inside(seed):
    rng = np.random.default_rng(seed)
    outer, inner = random_region(rng), random_region(rng)
    g = gap_per_dim(outer, inner)
    for v in vertices(outer):
        assert contains(inner, np.maximum(v - g, 0), tol=1e-9)


@given(st.integers(0, 2**32 - 1))
def test_unclipped_gap_dominates_clipped(seed):
    rng = np.random.default_rng(seed)
    outer, inner = random_region(rng), random_region(rng)
    assert gap_per_dim(outer, inner, clip=False) <= gap_per_dim(outer, inner) + 1e-12
