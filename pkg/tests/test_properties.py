"""Hypothesis property tests for the geometric core."""

import math

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from oracles import brute_theta_edges, cone_oracle
from theta_lab.errors import GeneralPositionError
from theta_lab.geometry import PI_10, cone_index, dist, normalize_pair, pentagon_pab
from theta_lab.io import format_points, parse_points
from theta_lab.spanner_metrics import spanning_ratio
from theta_lab.theta_graph import build_theta_graph, validate_general_position

coord = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)
point = st.tuples(coord, coord)


def general(pts, k):
    try:
        validate_general_position(pts, k)
    except GeneralPositionError:
        return False
    return True


@given(point, point, st.integers(3, 12))
def test_one_cone_per_point(v, p, k):
    assume(v != p)
    hits = cone_oracle(v, p, k)
    assert len(hits) == 1
    assert cone_index(v, p, k) == hits[0]


@given(point, point)
def test_normalize_pair_lands_in_the_wedge(a, b):
    assume(dist(a, b) > 1e-6)
    iso, f = normalize_pair(a, b)
    assert -1e-12 <= f.alpha <= PI_10 * (1 + 1e-9)
    assert f.ab == dist(a, b) or math.isclose(f.ab, dist(a, b), rel_tol=1e-12)
    assert cone_index(f.a, f.b, 5) == 2 and cone_index(f.b, f.a, 5) == 4


@given(point, point)
def test_pentagon_sides_equal(a, b):
    assume(dist(a, b) > 1e-3)
    _, f = normalize_pair(a, b)
    v = pentagon_pab(f).vertices
    side = dist(v[2], v[3])
    for i in range(5):
        assert math.isclose(dist(v[i], v[(i + 1) % 5]), side, rel_tol=1e-9)


@settings(max_examples=60, deadline=None)
@given(st.lists(point, min_size=2, max_size=14, unique=True), st.integers(3, 9))
def test_graph_matches_oracle_and_ratio_at_least_one(pts, k):
    assume(general(pts, k))
    g = build_theta_graph(pts, k)
    assert g.edges == brute_theta_edges(pts, k)
    assert spanning_ratio(g).ratio >= 1.0


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.floats(0, 1), st.floats(0, 1)), min_size=2, max_size=20, unique=True))
def test_theta5_ratio_below_570(pts):
    assume(general(pts, 5))
    assert spanning_ratio(build_theta_graph(pts, 5)).ratio <= 5.70


@given(st.lists(point, max_size=20))
def test_point_text_round_trip(pts):
    assert [tuple(p) for p in parse_points(format_points(pts))] == [tuple(map(float, p)) for p in pts]
