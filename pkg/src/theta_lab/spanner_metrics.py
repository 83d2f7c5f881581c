"""Shortest paths, spanning ratios and an adversarial stretch search."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .errors import GeneralPositionError, PreconditionError
from .geometry import Point, dist
from .theta_graph import ThetaGraph, build_theta_graph, validate_general_position

RATIO_RTOL = 1e-9


@dataclass(frozen=True)
class StretchReport:
    ratio: float
    witness_pair: tuple[int, int]
    path: list[int]
    per_pair_ratios: Optional[np.ndarray] = None

    def to_dict(self) -> dict:
        out = {"ratio": self.ratio, "witness_pair": list(self.witness_pair), "path": list(self.path)}
        if self.per_pair_ratios is not None:
            out["per_pair_ratios"] = self.per_pair_ratios.tolist()
        return out


def _walk(pred_row: np.ndarray, s: int, t: int) -> list[int]:
    path = [t]
    while path[-1] != s:
        p = int(pred_row[path[-1]])
        if p < 0:
            return []
        path.append(p)
    path.reverse()
    return path


def shortest_path(g: ThetaGraph, s: int, t: int) -> tuple[float, list[int]]:
    """Euclidean-weighted shortest path from ``s`` to ``t``.

    An unreachable target gives ``(math.inf, [])``.
    """
    for v in (s, t):
        if not 0 <= v < g.n:
            raise PreconditionError(f"vertex {v} out of range")
    if s == t:
        return 0.0, [s]
    dist_, pred = kernels.all_pairs(*g.csr(), sources=[s])
    d = float(dist_[0, t])
    if math.isinf(d):
        return math.inf, []
    return d, _walk(pred[0], s, t)


def all_pairs_shortest_paths(g: ThetaGraph, threads: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """Priority-queue distances and predecessors from every source."""
    csr = g.csr()
    n = g.n
    if threads <= 1 or n < 64:
        return kernels.all_pairs(*csr)
    chunks = [c for c in np.array_split(np.arange(n), threads) if c.size]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(lambda c: kernels.all_pairs(*csr, sources=c), chunks))
    return np.vstack([p[0] for p in parts]), np.vstack([p[1] for p in parts])


def floyd_warshall(g: ThetaGraph) -> np.ndarray:
    """Cubic all-pairs relaxation, kept as an independent oracle."""
    n = g.n
    d = np.full((n, n), np.inf)
    np.fill_diagonal(d, 0.0)
    for u, v in g.edges:
        w = g.edge_length(u, v)
        d[u, v] = d[v, u] = w
    for k in range(n):
        d = np.minimum(d, d[:, k : k + 1] + d[k : k + 1, :])
    return d


def euclidean_matrix(points: Sequence[Point]) -> np.ndarray:
    xy = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    return np.hypot(xy[:, 0:1] - xy[:, 0], xy[:, 1:2] - xy[:, 1])


def spanning_ratio(g: ThetaGraph, keep_matrix: bool = False, threads: int = 1) -> StretchReport:
    """Maximum over pairs of graph distance / Euclidean distance.

    Ratios within ``RATIO_RTOL`` of the maximum tie; the lexicographically
    smallest pair wins.
    """
    if g.n < 2:
        raise PreconditionError("spanning ratio needs at least two points")
    dg, pred = all_pairs_shortest_paths(g, threads)
    de = euclidean_matrix(g.points)
    iu = np.triu_indices(g.n, k=1)
    ratios = dg[iu] / de[iu]
    best = float(ratios.max())
    hit = int(np.flatnonzero(ratios >= best * (1 - RATIO_RTOL))[0])
    s, t = int(iu[0][hit]), int(iu[1][hit])
    matrix = None
    if keep_matrix:
        matrix = np.ones((g.n, g.n))
        matrix[iu] = ratios
        matrix[(iu[1], iu[0])] = ratios
    path = _walk(pred[s], s, t) if math.isfinite(best) else []
    return StretchReport(ratio=float(ratios[hit]), witness_pair=(s, t), path=path, per_pair_ratios=matrix)


@dataclass(frozen=True)
class SearchResult:
    points: tuple[Point, ...]
    report: StretchReport
    accepted: int
    iterations: int
    seed: int


def stretch_search(
    n: int,
    iterations: int,
    seed: int,
    k: int = 5,
    step_range: tuple[float, float] = (1e-3, 3.0),
) -> SearchResult:
    """Hill-climb a point set toward a large Theta_k spanning ratio.

    Start from ``n`` uniform points in the unit square.  Each iteration moves
    one random point by a Gaussian step and keeps the move iff the ratio
    strictly increases and general position still holds.  The step's
    standard deviation is the moved point's nearest-neighbour distance times
    a log-uniform factor from ``step_range``; the ratio is scale-free, so
    steps follow the local feature size and the occasional long jump gets
    out of shallow local maxima.  Deterministic for a given seed.
    """
    if n < 3:
        raise PreconditionError("stretch_search needs n >= 3")
    lo, hi = step_range
    if not 0 < lo <= hi:
        raise PreconditionError("step_range must satisfy 0 < lo <= hi")
    rng = np.random.default_rng(seed)
    xy = rng.random((n, 2))
    while True:
        try:
            validate_general_position(xy, k)
            break
        except GeneralPositionError:
            xy = rng.random((n, 2))
    best = spanning_ratio(build_theta_graph(xy, k, validate=False))
    accepted = 0
    log_lo, log_hi = math.log(lo), math.log(hi)
    for _ in range(iterations):
        i = int(rng.integers(n))
        d = np.hypot(xy[:, 0] - xy[i, 0], xy[:, 1] - xy[i, 1])
        d[i] = np.inf
        sigma = float(d.min()) * math.exp(rng.uniform(log_lo, log_hi))
        cand = xy.copy()
        cand[i] += rng.normal(0.0, sigma, size=2)
        try:
            validate_general_position(cand, k)
        except GeneralPositionError:
            continue
        rep = spanning_ratio(build_theta_graph(cand, k, validate=False))
        if rep.ratio > best.ratio:
            xy, best = cand, rep
            accepted += 1
    pts = tuple(Point(float(x), float(y)) for x, y in xy)
    return SearchResult(points=pts, report=best, accepted=accepted, iterations=iterations, seed=seed)


def ruppert_seidel_bound(k: int) -> float:
    """Upper bound 1 / (1 - 2 sin(pi/k)) on the Theta_k ratio, valid for k >= 7."""
    if k < 7:
        raise PreconditionError("the bound needs k >= 7")
    return 1.0 / (1.0 - 2.0 * math.sin(math.pi / k))


def path_length(points: Sequence[Point], path: Sequence[int]) -> float:
    return sum(dist(points[u], points[v]) for u, v in zip(path, path[1:]))
