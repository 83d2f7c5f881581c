import dataclasses
import math

import pytest

from conftest import random_points
from theta_lab.errors import PreconditionError
from theta_lab.geometry import Point, frame_at, lerp, pentagon_pab, point_in_triangle, segments_cross
from theta_lab.induction_router import (
    CASE_TABLE,
    CaseLabel,
    InductiveRouter,
    certify_all,
    classify_case,
    inductive_path,
    inequality_sides,
    validate_certificate,
)
from theta_lab.spanner_metrics import shortest_path
from theta_lab.theta_graph import build_theta_graph

THREE = [(0.0, 0.0), (0.1, 1.0), (-0.2, 0.5)]


def test_edge_pair_gives_one_step():
    g = build_theta_graph(THREE, 5)
    cert = inductive_path(g, 0, 2)
    assert cert.path == (0, 2)
    assert len(cert.steps) == 1 and cert.steps[0].label is CaseLabel.DIRECT_EDGE
    assert cert.total_length == pytest.approx(math.dist(THREE[0], THREE[2]))
    assert cert.bound == pytest.approx(5.70 * math.dist(THREE[0], THREE[2]))
    assert cert.valid


def test_hand_built_two_step_certificate():
    g = build_theta_graph(THREE, 5)
    assert not g.has_edge(0, 1) and g.cone_target[0][2] == 2 and g.has_edge(2, 1)
    cert = inductive_path(g, 0, 1)
    assert cert.path == (0, 2, 1)
    first, second = cert.steps
    assert first.kind == "A" and first.sub_pair == (2, 1) and first.holds
    assert second.label is CaseLabel.DIRECT_EDGE
    d, _ = shortest_path(g, 0, 1)
    assert cert.total_length == pytest.approx(d, rel=1e-12)
    assert cert.valid


def test_reverse_pair_path_runs_the_other_way():
    pts = random_points(30, 3)
    g = build_theta_graph(pts, 5)
    router = InductiveRouter(g)
    for a in range(0, 30, 7):
        for b in range(30):
            if a == b:
                continue
            fwd, back = router.certificate(a, b), router.certificate(b, a)
            assert fwd.path[0] == a and fwd.path[-1] == b
            assert back.path[0] == b and back.path[-1] == a
            assert fwd.valid and back.valid


@pytest.mark.parametrize("seed", range(12))
def test_random_instances_certify(seed):
    n = (10, 25, 40)[seed % 3]
    pts = random_points(n, 1000 + seed)
    g = build_theta_graph(pts, 5)
    for cert in certify_all(g):
        assert cert.valid, cert.problems
        assert validate_certificate(cert, g) == []
        a, b = cert.pair
        assert cert.total_length <= 5.70 * math.dist(pts[a], pts[b]) * (1 + 1e-9)
        assert cert.total_length >= shortest_path(g, a, b)[0] - 1e-12
        for u, v in zip(cert.path, cert.path[1:]):
            assert g.has_edge(u, v)
        for st in cert.steps:
            if st.label is not CaseLabel.DIRECT_EDGE:
                assert st.holds_at_case_K, (st.label, st.lhs, st.rhs)


def test_sub_pairs_shrink():
    g = build_theta_graph(random_points(40, 17), 5)
    pts = g.points
    for cert in certify_all(g):
        for st in cert.steps:
            if st.sub_pair is not None:
                assert math.dist(*(pts[i] for i in st.sub_pair)) < math.dist(*(pts[i] for i in st.pair))


def test_guard_rail_below_theorem_constant():
    g = build_theta_graph(THREE, 5)
    with pytest.raises(PreconditionError):
        inductive_path(g, 0, 1, K=5.69)
    with pytest.raises(PreconditionError):
        certify_all(g, K=1.0)


def test_router_is_theta5_only():
    with pytest.raises(PreconditionError):
        InductiveRouter(build_theta_graph(THREE, 6))


def test_tampered_certificate_is_caught():
    g = build_theta_graph(random_points(25, 2), 5)
    cert = next(c for c in certify_all(g) if len(c.path) > 2)
    short = dataclasses.replace(cert, total_length=cert.total_length * 0.5)
    assert any("total_length" in p for p in validate_certificate(short, g))
    skip = dataclasses.replace(cert, path=(cert.path[0], cert.path[-1]))
    assert validate_certificate(skip, g)
    low = dataclasses.replace(cert, K=1.0)
    assert validate_certificate(low, g)


def test_classify_c_right_of_ab():
    f = frame_at(0.05)
    pen = pentagon_pab(f)
    assert classify_case(f, Point(0.5, 0.5), Point(-0.1, 0.3), pen) is CaseLabel.C_RIGHT_AB


def test_classify_c_in_tba():
    f = frame_at(0.05)
    pen = pentagon_pab(f)
    c = lerp(f.b, f.a, 0.1)
    c = Point(c.x - 0.01, c.y)
    assert point_in_triangle(c, f.t_ba)
    assert classify_case(f, c, Point(-0.1, 0.3), pen) is CaseLabel.C_IN_TBA


def test_classify_crossing_inside_pentagon():
    f = frame_at(0.05)
    pen = pentagon_pab(f)
    c, d = Point(-0.8, 0.9), Point(-0.75, 0.6)
    assert pen.contains(c) and pen.contains(d) and d.y < c.y
    assert segments_cross(f.a, c, f.b, d)
    assert classify_case(f, c, d, pen) is CaseLabel.BOTH_IN_PAB_CROSSING


def test_classify_needs_a_non_edge():
    f = frame_at(0.05)
    with pytest.raises(PreconditionError):
        classify_case(f, f.b, Point(-0.1, 0.3), pentagon_pab(f))


def test_case_table_constants():
    assert {v[0] for v in CASE_TABLE.values()} == set(range(8, 16))
    assert max(v[2] for v in CASE_TABLE.values()) == 6.16
    assert {v[1] for v in CASE_TABLE.values()} == {"A", "B", "C"}


def test_inequality_sides():
    a, b, c, d = (0, 0), (0, 1), (-0.3, 0.6), (-0.2, 0.4)
    lhs, rhs = inequality_sides("C", a, b, c, d, 2.0)
    assert lhs == pytest.approx(math.dist(a, c) + 2 * math.dist(c, d) + math.dist(d, b))
    assert rhs == 2.0
    with pytest.raises(ValueError):
        inequality_sides("D", a, b, c, d, 2.0)
