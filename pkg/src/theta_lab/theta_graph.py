"""Construction of Theta_k graphs.

Each vertex v gets one directed edge per non-empty cone, to the point whose
projection onto that cone's bisector is shortest.  The graph keeps the
directed cone targets and exposes the undirected union as ``edges``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from . import kernels
from .errors import GeneralPositionError, PreconditionError
from .geometry import Point, as_point, dist

TIE_TOL = 1e-12


@dataclass(frozen=True)
class ThetaGraph:
    k: int
    points: tuple[Point, ...]
    edges: frozenset[tuple[int, int]]
    cone_target: tuple[tuple[Optional[int], ...], ...]
    _adjacency: tuple[tuple[int, ...], ...] = field(repr=False, compare=False, default=())

    @property
    def n(self) -> int:
        return len(self.points)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def edge_length(self, u: int, v: int) -> float:
        return dist(self.points[u], self.points[v])

    def out_degree(self, v: int) -> int:
        return sum(t is not None for t in self.cone_target[v])

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def csr(self):
        """(indptr, indices, weights) of the undirected weighted graph."""
        indptr = [0]
        indices: list[int] = []
        weights: list[float] = []
        for u in range(self.n):
            for v in self._adjacency[u]:
                indices.append(v)
                weights.append(self.edge_length(u, v))
            indptr.append(len(indices))
        return (
            np.asarray(indptr, dtype=np.int64),
            np.asarray(indices, dtype=np.int64),
            np.asarray(weights, dtype=np.float64),
        )


def validate_general_position(points: Sequence[Sequence[float]], k: int) -> None:
    """Reject duplicate x or y coordinates and cone-distance ties.

    Raises :class:`GeneralPositionError` naming the offending indices.
    """
    pts = [as_point(p) for p in points]
    for axis, name in ((0, "x"), (1, "y")):
        seen: dict[float, int] = {}
        for i, p in enumerate(pts):
            j = seen.setdefault(p[axis], i)
            if j != i:
                raise GeneralPositionError(
                    f"points {j} and {i} share the {name}-coordinate {p[axis]!r}", (j, i)
                )
    n = len(pts)
    if n < 3:
        return
    xs = np.array([p.x for p in pts])
    ys = np.array([p.y for p in pts])
    width = 2 * math.pi / k
    mid = (np.arange(k) + 0.5) * width
    bx, by = np.sin(mid), -np.cos(mid)
    idx = np.arange(n)
    for v in range(n):
        dx, dy = xs - xs[v], ys - ys[v]
        mask = idx != v
        dx, dy, others = dx[mask], dy[mask], idx[mask]
        phi = np.mod(np.arctan2(dx, -dy), 2 * math.pi)
        t = phi / width
        j = np.rint(t)
        cone = np.where(np.abs(t - j) <= 1e-9, j - 1, np.floor(t)).astype(np.int64) % k
        proj = dx * bx[cone] + dy * by[cone]
        for i in range(k):
            sel = cone == i
            if sel.sum() < 2:
                continue
            order = np.argsort(proj[sel], kind="stable")
            vals = proj[sel][order]
            gaps = np.diff(vals) <= TIE_TOL * np.maximum(np.abs(vals[1:]), 1e-300)
            if gaps.any():
                g = int(np.argmax(gaps))
                p, q = others[sel][order][g], others[sel][order][g + 1]
                raise GeneralPositionError(
                    f"points {p} and {q} are tied in cone {i} of point {v}", (v, int(p), int(q))
                )


def build_theta_graph(points: Iterable[Sequence[float]], k: int = 5, validate: bool = True) -> ThetaGraph:
    """Build the Theta_k graph of ``points`` (naive O(n^2) construction)."""
    if k < 3:
        raise PreconditionError(f"need k >= 3, got {k}")
    pts = tuple(as_point(p) for p in points)
    if not pts:
        raise PreconditionError("need at least one point")
    if validate:
        validate_general_position(pts, k)
    xs = np.array([p.x for p in pts])
    ys = np.array([p.y for p in pts])
    targets = kernels.cone_targets(xs, ys, k)
    cone_target = tuple(tuple(None if t < 0 else int(t) for t in row) for row in targets)
    edges = set()
    for v, row in enumerate(cone_target):
        for w in row:
            if w is not None:
                edges.add((min(v, w), max(v, w)))
    adj: list[set[int]] = [set() for _ in pts]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return ThetaGraph(
        k=k,
        points=pts,
        edges=frozenset(edges),
        cone_target=cone_target,
        _adjacency=tuple(tuple(sorted(s)) for s in adj),
    )


def nearest_in_cone(g: ThetaGraph, v: int, i: int) -> Optional[int]:
    """The stored cone target of ``v`` in cone ``i``, or None for an empty cone."""
    if not 0 <= v < g.n:
        raise PreconditionError(f"vertex {v} out of range")
    if not 0 <= i < g.k:
        raise PreconditionError(f"cone {i} out of range for k={g.k}")
    return g.cone_target[v][i]
