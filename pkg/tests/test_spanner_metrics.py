import math

import numpy as np
import pytest

from conftest import random_points
from oracles import floyd_warshall_py
from theta_lab.errors import PreconditionError
from theta_lab.spanner_metrics import (
    all_pairs_shortest_paths,
    floyd_warshall,
    path_length,
    ruppert_seidel_bound,
    shortest_path,
    spanning_ratio,
    stretch_search,
)
from theta_lab.theta_graph import build_theta_graph

SEARCH_RATIO_N5_SEED42 = 2.2022196812806953  # frozen from the first run of stretch_search(5, 10**4, 42)


def test_trivial_paths():
    g = build_theta_graph([(0.0, 0.0), (0.3, 1.0)], 5)
    assert shortest_path(g, 0, 0) == (0.0, [0])
    d, p = shortest_path(g, 0, 1)
    assert d == pytest.approx(math.hypot(0.3, 1.0))
    assert p == [0, 1]


def test_vertex_out_of_range():
    g = build_theta_graph([(0.0, 0.0)], 5)
    with pytest.raises(PreconditionError):
        shortest_path(g, 0, 1)


@pytest.mark.parametrize("seed", range(10))
def test_dijkstra_matches_floyd_warshall(seed):
    pts = random_points(10 + 4 * seed, seed)
    g = build_theta_graph(pts, 5)
    want = np.array(floyd_warshall_py(pts, g.edges))
    dg, pred = all_pairs_shortest_paths(g)
    assert np.max(np.abs(dg - want)) <= 1e-9
    assert np.max(np.abs(floyd_warshall(g) - want)) <= 1e-9
    for s in range(0, g.n, 5):
        for t in range(g.n):
            d, path = shortest_path(g, s, t)
            assert path_length(pts, path) == pytest.approx(d, abs=1e-12)


def test_threaded_all_pairs_is_identical():
    g = build_theta_graph(random_points(120, 3), 5)
    d1, p1 = all_pairs_shortest_paths(g, threads=1)
    d4, p4 = all_pairs_shortest_paths(g, threads=4)
    assert np.array_equal(d1, d4)
    assert np.array_equal(p1, p4)


def test_ratio_of_two_points_is_one():
    rep = spanning_ratio(build_theta_graph([(0.0, 0.0), (0.3, 1.0)], 5))
    assert rep.ratio == 1.0
    assert rep.witness_pair == (0, 1)


def test_ratio_needs_two_points():
    with pytest.raises(PreconditionError):
        spanning_ratio(build_theta_graph([(0.0, 0.0)], 5))


def test_witness_is_consistent():
    pts = random_points(40, 8)
    g = build_theta_graph(pts, 5)
    rep = spanning_ratio(g, keep_matrix=True)
    s, t = rep.witness_pair
    d, _ = shortest_path(g, s, t)
    assert rep.ratio == pytest.approx(d / math.dist(pts[s], pts[t]), rel=1e-9)
    assert path_length(pts, rep.path) == pytest.approx(d, rel=1e-12)
    assert rep.per_pair_ratios.max() == pytest.approx(rep.ratio, rel=1e-12)
    assert rep.per_pair_ratios.min() >= 1.0 - 1e-12
    assert rep.ratio >= 1.0


def test_ratio_independent_of_thread_count():
    g = build_theta_graph(random_points(100, 12), 5)
    a, b = spanning_ratio(g, threads=1), spanning_ratio(g, threads=3)
    assert a.ratio == b.ratio and a.witness_pair == b.witness_pair and a.path == b.path


def test_ratio_is_one_for_complete_graphs():
    # three points where every pair is an edge
    g = build_theta_graph([(0.0, 0.0), (1.0, 0.1), (0.4, 1.2)], 5)
    assert len(g.edges) == 3
    assert spanning_ratio(g).ratio == pytest.approx(1.0)


def test_search_with_no_iterations_is_the_seed_instance():
    res = stretch_search(6, 0, 5)
    xy = np.random.default_rng(5).random((6, 2))
    assert res.accepted == 0
    assert res.report.ratio == spanning_ratio(build_theta_graph(xy, 5)).ratio


def test_search_is_deterministic():
    a, b = stretch_search(5, 300, 9), stretch_search(5, 300, 9)
    assert a.points == b.points and a.report.ratio == b.report.ratio


def test_search_regression_value():
    res = stretch_search(5, 10_000, 42)
    assert res.report.ratio == SEARCH_RATIO_N5_SEED42
    assert 2.0 <= res.report.ratio <= 5.70


def test_search_needs_three_points():
    with pytest.raises(PreconditionError):
        stretch_search(2, 10, 0)


def test_ruppert_seidel_bound():
    assert ruppert_seidel_bound(12) == pytest.approx(1 / (1 - 2 * math.sin(math.pi / 12)))
    with pytest.raises(PreconditionError):
        ruppert_seidel_bound(6)
