"""Vectorized planar helpers over (N, 2) arrays."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, TypeVar

import numpy as np

from ..geometry import REL_TOL

T = TypeVar("T")


def P(p) -> np.ndarray:
    return np.asarray(p, dtype=np.float64)


def norm(v: np.ndarray) -> np.ndarray:
    return np.hypot(v[..., 0], v[..., 1])


def dist(p, X) -> np.ndarray:
    return norm(P(X) - P(p))


def orient(p, q, X) -> np.ndarray:
    p, q, X = P(p), P(q), P(X)
    return (q[0] - p[0]) * (X[..., 1] - p[1]) - (q[1] - p[1]) * (X[..., 0] - p[0])


def inside(X, poly: Sequence, tol: float = REL_TOL) -> np.ndarray:
    """Closed membership in a convex polygon, tolerance relative to its size."""
    poly = [P(v) for v in poly]
    n = len(poly)
    area = sum(orient(poly[0], poly[i], poly[i + 1]) for i in range(1, n - 1))
    sgn = 1.0 if area >= 0 else -1.0
    diam = max(float(np.hypot(*(u - v))) for u in poly for v in poly)
    ok = np.ones(np.shape(X)[:-1], dtype=bool)
    for i in range(n):
        ok &= sgn * orient(poly[i], poly[(i + 1) % n], X) >= -tol * diam * diam
    return ok


def project_along(X, h, s, d) -> np.ndarray:
    """Where the line through each X with direction h meets the line s + mu*d."""
    X, h, s, d = P(X), P(h), P(s), P(d)
    denom = d[0] * h[1] - d[1] * h[0]
    rel = X - s
    mu = (rel[..., 0] * h[1] - rel[..., 1] * h[0]) / denom
    return s + mu[..., None] * d


def tri_grid(p, q, r, m: int, drop_first: bool = False) -> tuple[np.ndarray, np.ndarray]:
    """Barycentric grid of resolution m; returns (points, weights on p, q, r)."""
    i, j = np.meshgrid(np.arange(m + 1), np.arange(m + 1), indexing="ij")
    keep = i + j <= m
    wp = i[keep] / m
    wq = j[keep] / m
    wr = 1.0 - wp - wq
    if drop_first:
        sel = wp < 1.0
        wp, wq, wr = wp[sel], wq[sel], wr[sel]
    pts = wp[:, None] * P(p) + wq[:, None] * P(q) + wr[:, None] * P(r)
    return pts, np.stack([wp, wq, wr], axis=1)


def in_box(rng: np.random.Generator, n: int, lo, hi) -> np.ndarray:
    lo, hi = P(lo), P(hi)
    return lo + rng.random((n, 2)) * (hi - lo)


def bbox(points: Sequence) -> tuple[np.ndarray, np.ndarray]:
    arr = np.array([P(p) for p in points])
    return arr.min(axis=0), arr.max(axis=0)


def map_levels(fn: Callable[[int], T], count: int, threads: int = 1) -> list[T]:
    """Evaluate fn over level indices, in order, optionally on a thread pool."""
    if threads <= 1 or count < 2:
        return [fn(i) for i in range(count)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, range(count)))
