import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from diskconn.geometry import (
    Point,
    Site,
    disks_intersect,
    euclidean_distance,
    intersection_block,
    intersects_many,
    weighted_distance,
)

coord = st.floats(-1e4, 1e4, allow_nan=False, allow_infinity=False)
radius = st.floats(1e-3, 1e3, allow_nan=False, allow_infinity=False)
points = st.builds(Point, coord, coord)
sites = st.builds(lambda x, y, r: Site.at(0, x, y, r), coord, coord, radius)


@pytest.mark.parametrize(
    "a, b, expected",
    [((0, 0), (0, 0), 0.0), ((0, 0), (3, 4), 5.0), ((1, 1), (-2, 5), 5.0)],
)
def test_euclidean_distance(a, b, expected):
    assert euclidean_distance(Point(*a), Point(*b)) == expected


@pytest.mark.parametrize(
    "s, t, expected",
    [
        ((0, 0, 1), (2, 0, 1), True),  # tangent
        ((0, 0, 1), (3, 0, 1), False),
        ((0, 0, 2), (0.5, 0, 0.25), True),  # containment
    ],
)
def test_disks_intersect(site, s, t, expected):
    assert disks_intersect(site(0, *s), site(1, *t)) is expected


def test_coincident_sites_intersect(site):
    assert disks_intersect(site(0, 3, 3, 0.1), site(1, 3, 3, 0.1))
    assert disks_intersect(site(0, 3, 3, 0.1), site(0, 3, 3, 0.1))


@pytest.mark.parametrize(
    "q, s, expected",
    [((0, 0), (0, 0, 1), -1.0), ((3, 4), (0, 0, 2), 3.0), ((2, 0), (0, 0, 2), 0.0)],
)
def test_weighted_distance(site, q, s, expected):
    assert weighted_distance(Point(*q), site(0, *s)) == expected


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_point_rejects_non_finite(bad):
    with pytest.raises(ValueError):
        Point(bad, 0.0)


@pytest.mark.parametrize("r", [0.0, -1.0, math.nan, math.inf])
def test_site_rejects_bad_radius(r):
    with pytest.raises(ValueError):
        Site.at(0, 0, 0, r)


@given(sites, sites)
def test_intersection_is_symmetric(s, t):
    assert disks_intersect(s, t) == disks_intersect(t, s)


@given(sites, sites)
def test_squared_and_weighted_forms_agree_off_ties(s, t):
    gap = euclidean_distance(s.center, t.center) - (s.radius + t.radius)
    assume(abs(gap) > 1e-9)
    assert disks_intersect(s, t) == (weighted_distance(s.center, t) <= s.radius)


@given(points, points, points)
def test_triangle_inequality(a, b, c):
    ab = euclidean_distance(a, b)
    bc = euclidean_distance(b, c)
    ac = euclidean_distance(a, c)
    assert ac <= (ab + bc) * (1 + 1e-12) + 1e-300


@given(sites, st.lists(st.tuples(coord, coord, radius), max_size=20))
def test_vectorized_predicates_match_scalar(s, others):
    ts = [Site.at(i + 1, *o) for i, o in enumerate(others)]
    xs = [t.x for t in ts]
    ys = [t.y for t in ts]
    rs = [t.radius for t in ts]
    expect = [disks_intersect(s, t) for t in ts]
    assert intersects_many(s.x, s.y, s.radius, xs, ys, rs).tolist() == expect
    if ts:
        block = intersection_block([s.x] + xs, [s.y] + ys, [s.radius] + rs, slice(0, 1))
        assert block[0, 1:].tolist() == expect
        assert block[0, 0]


def test_weighted_distance_matches_numpy_formula():
    rng = np.random.default_rng(5)
    for _ in range(200):
        qx, qy, x, y = rng.normal(scale=50, size=4)
        r = rng.uniform(0.1, 10)
        dx, dy = qx - np.array([x]), qy - np.array([y])
        vec = (np.sqrt(dx * dx + dy * dy) + np.array([-r]))[0]
        assert weighted_distance(Point(qx, qy), Site.at(0, x, y, r)) == vec
