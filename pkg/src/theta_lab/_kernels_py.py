"""Pure-Python (numpy + heapq) versions of the hot kernels.

These mirror ``_ckernels.pyx`` exactly and are used when the compiled
extension is unavailable or ``THETA_LAB_PURE=1`` is set.
"""

import heapq
import math

import numpy as np

TAU = 2.0 * math.pi


def cone_targets(xs, ys, k, snap=1e-9):
    """For every vertex and cone, the index of the closest point in that cone.

    Returns an ``(n, k)`` int64 array with -1 for empty cones.  Ties in
    cone distance go to the lower index.
    """
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    ys = np.ascontiguousarray(ys, dtype=np.float64)
    n = xs.shape[0]
    width = TAU / k
    mid = (np.arange(k) + 0.5) * width
    bx, by = np.sin(mid), -np.cos(mid)
    out = np.full((n, k), -1, dtype=np.int64)
    idx = np.arange(n)
    for v in range(n):
        dx = xs - xs[v]
        dy = ys - ys[v]
        mask = idx != v
        dx, dy, others = dx[mask], dy[mask], idx[mask]
        if others.size == 0:
            continue
        phi = np.arctan2(dx, -dy)
        phi = np.where(phi < 0.0, phi + TAU, phi)
        t = phi / width
        j = np.rint(t)
        cone = np.where(np.abs(t - j) <= snap, j - 1, np.floor(t)).astype(np.int64) % k
        proj = dx * bx[cone] + dy * by[cone]
        for i in range(k):
            sel = cone == i
            if sel.any():
                cand = others[sel]
                out[v, i] = cand[np.argmin(proj[sel])]
    return out


def single_source(indptr, indices, weights, source):
    n = len(indptr) - 1
    dist = [math.inf] * n
    pred = [-1] * n
    dist[source] = 0.0
    heap = [(0.0, source)]
    done = [False] * n
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for e in range(indptr[u], indptr[u + 1]):
            w = indices[e]
            nd = d + weights[e]
            # strict improvement, or equal length through a lower predecessor
            if nd < dist[w] or (nd == dist[w] and not done[w] and u < pred[w]):
                dist[w] = nd
                pred[w] = u
                heapq.heappush(heap, (nd, w))
    return dist, pred


def all_pairs(indptr, indices, weights, sources=None):
    """Dijkstra from each source; returns ``(dist, pred)`` as (s, n) arrays."""
    n = len(indptr) - 1
    indptr = list(map(int, indptr))
    indices = list(map(int, indices))
    weights = list(map(float, weights))
    if sources is None:
        sources = range(n)
    sources = list(sources)
    dist = np.empty((len(sources), n))
    pred = np.empty((len(sources), n), dtype=np.int64)
    for row, s in enumerate(sources):
        d, p = single_source(indptr, indices, weights, s)
        dist[row] = d
        pred[row] = p
    return dist, pred
