"""Acceptance criteria, one test each.

Each test records a one-line verdict; the lines are printed at the end of
the pytest run (see conftest.py) or directly when run as a script:

    python3 tests/test_acceptance.py
"""

import math
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).parent))

from oracles import closest_pair, floyd_warshall_py  # noqa: E402
from theta_lab.induction_router import certify_all, validate_certificate  # noqa: E402
from theta_lab.lemma_lab import paper_constants, run_lemma_suite  # noqa: E402
from theta_lab.spanner_metrics import (  # noqa: E402
    all_pairs_shortest_paths,
    ruppert_seidel_bound,
    spanning_ratio,
    stretch_search,
)
from theta_lab.theta_graph import build_theta_graph  # noqa: E402

VERDICTS: list[str] = []
SEARCH_RATIO_N5_SEED42 = 2.2022196812806953  # recorded on the first run


def record(n: int, ok: bool, detail: str) -> None:
    VERDICTS.append(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def points(n, seed):
    return np.random.default_rng(seed).random((n, 2))


def _truncates_to(x, cents):
    # two-decimal truncation, and x must not sit within 1e-12 of a cut
    return math.floor(x * 100) == cents and abs(x * 100 - round(x * 100)) > 1e-12


def test_criterion_1_constants():
    c = paper_constants()
    k_main = math.sin(3 * math.pi / 10) / (math.sin(2 * math.pi / 5) - math.sin(3 * math.pi / 10))
    ok = (
        abs(c.K_main - k_main) <= 1e-12
        and c.K_main < 5.70
        and _truncates_to(c.K_main, 569)
        and _truncates_to(c.K_t253, 452)
        and _truncates_to(c.K_posofc, 323)
        and _truncates_to(c.K_case5, 323)
        and _truncates_to(c.K_case8, 615)
    )
    record(1, ok, f"K_main={c.K_main!r} K_t253={c.K_t253!r} K_posofc={c.K_posofc!r} "
                  f"K_case5={c.K_case5!r} K_case8={c.K_case8!r}")


def test_criterion_2_lemma_suite():
    t0 = time.perf_counter()
    reps = run_lemma_suite(grid=500, samples=100_000, seed=0)
    elapsed = time.perf_counter() - t0
    mains = [r for r in reps if r.role == "main"]
    controls = [r for r in reps if r.role == "control"]
    bad = [f"{r.lemma_id}/{r.role}" for r in reps if not r.ok]
    worst = max(r.max_potential for r in mains)
    ok = not bad and elapsed <= 60.0 and all(r.max_potential <= 1e-9 for r in mains)
    record(2, ok, f"{len(mains)} main runs pass (max potential {worst:.2e}), "
                  f"{len(controls)} controls fail, {elapsed:.1f}s; unexpected: {bad or 'none'}")


def test_criterion_3_theorem_on_200_instances():
    t0 = time.perf_counter()
    worst, invalid, pairs = 0.0, 0, 0
    for seed in range(200):
        g = build_theta_graph(points((10, 25, 50, 100)[seed % 4], seed), 5)
        worst = max(worst, spanning_ratio(g).ratio)
        for cert in certify_all(g, 5.70):
            pairs += 1
            if not cert.valid or validate_certificate(cert, g):
                invalid += 1
    elapsed = time.perf_counter() - t0
    ok = worst <= 5.70 and invalid == 0 and elapsed <= 120.0
    record(3, ok, f"max ratio {worst:.4f} over 200 instances, {invalid}/{pairs} invalid certificates, "
                  f"{elapsed:.1f}s")


def test_criterion_4_dijkstra_equals_floyd_warshall():
    worst = 0.0
    for seed in range(50):
        n = 5 + seed % 46
        pts = [tuple(p) for p in points(n, 10_000 + seed)]
        g = build_theta_graph(pts, 5)
        d, _ = all_pairs_shortest_paths(g)
        worst = max(worst, float(np.max(np.abs(d - np.array(floyd_warshall_py(pts, g.edges))))))
    record(4, worst <= 1e-9, f"max |dijkstra - floyd_warshall| = {worst:.2e} over 50 instances")


def test_criterion_5_closest_pair_is_an_edge():
    misses = []
    for seed in range(100):
        pts = [tuple(p) for p in points(10 + seed % 91, 20_000 + seed)]
        if not build_theta_graph(pts, 5).has_edge(*closest_pair(pts)):
            misses.append(seed)
    record(5, not misses, f"closest pair is an edge in {100 - len(misses)}/100 instances")


def test_criterion_6_cited_bounds():
    theta6 = max(spanning_ratio(build_theta_graph(points(30, 30_000 + s), 6)).ratio for s in range(50))
    slack = []
    for k in range(7, 13):
        worst = max(spanning_ratio(build_theta_graph(points(30, 40_000 + 100 * k + s), k)).ratio
                    for s in range(20))
        slack.append((k, worst, ruppert_seidel_bound(k)))
    ok = theta6 <= 2.0 and all(w <= b for _, w, b in slack)
    detail = ", ".join(f"k={k}: {w:.3f}<={b:.3f}" for k, w, b in slack)
    record(6, ok, f"Theta_6 max {theta6:.4f}<=2; {detail}")


def test_criterion_7_adversarial_floor():
    res = stretch_search(5, 10_000, 42)
    r = res.report.ratio
    ok = r == SEARCH_RATIO_N5_SEED42 and 2.0 <= r <= 5.70
    record(7, ok, f"stretch_search(5, 10^4, 42) = {r!r} (recorded {SEARCH_RATIO_N5_SEED42!r})")


if __name__ == "__main__":
    failed = 0
    for name, fn in list(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
            print(VERDICTS[-1], flush=True)
    sys.exit(1 if failed else 0)
