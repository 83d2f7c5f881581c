# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: cone targets and all-pairs Dijkstra.

Semantics match ``_kernels_py`` exactly; see that module for the contracts.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport atan2, floor, fabs, rint, sin, cos, M_PI, INFINITY
from libc.stdlib cimport malloc, free

cnp.import_array()


def cone_targets(xs_in, ys_in, int k, double snap=1e-9):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xs = np.ascontiguousarray(xs_in, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ys = np.ascontiguousarray(ys_in, dtype=np.float64)
    cdef Py_ssize_t n = xs.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=2] out = np.full((n, k), -1, dtype=np.int64)
    cdef double tau = 2.0 * M_PI
    cdef double width = tau / k
    cdef double[:] bx = np.sin((np.arange(k) + 0.5) * width)
    cdef double[:] by = -np.cos((np.arange(k) + 0.5) * width)
    cdef double[:] best = np.empty(k)
    cdef Py_ssize_t v, p, i
    cdef long cone
    cdef double dx, dy, phi, t, j, proj
    cdef cnp.int64_t[:, :] o = out
    cdef double[:] X = xs
    cdef double[:] Y = ys
    with nogil:
        for v in range(n):
            for i in range(k):
                best[i] = INFINITY
            for p in range(n):
                if p == v:
                    continue
                dx = X[p] - X[v]
                dy = Y[p] - Y[v]
                phi = atan2(dx, -dy)
                if phi < 0.0:
                    phi = phi + tau
                t = phi / width
                j = rint(t)
                if fabs(t - j) <= snap:
                    cone = <long>j - 1
                else:
                    cone = <long>floor(t)
                cone = cone % k
                if cone < 0:
                    cone = cone + k
                proj = dx * bx[cone] + dy * by[cone]
                if proj < best[cone]:
                    best[cone] = proj
                    o[v, cone] = p
    return out


cdef void _dijkstra(Py_ssize_t n, const long* indptr, const long* indices,
                    const double* weights, Py_ssize_t source,
                    double* dist, long* pred, long* heap_v, double* heap_d,
                    char* done) nogil:
    cdef Py_ssize_t size = 0, pos, child, parent
    cdef long u, w, e, tv
    cdef double d, nd, td
    cdef Py_ssize_t i
    for i in range(n):
        dist[i] = INFINITY
        pred[i] = -1
        done[i] = 0
    dist[source] = 0.0
    heap_v[0] = source
    heap_d[0] = 0.0
    size = 1
    while size > 0:
        u = heap_v[0]
        d = heap_d[0]
        size -= 1
        if size > 0:
            # sift the last entry down from the root
            tv = heap_v[size]
            td = heap_d[size]
            pos = 0
            while True:
                child = 2 * pos + 1
                if child >= size:
                    break
                if child + 1 < size and (heap_d[child + 1] < heap_d[child] or
                        (heap_d[child + 1] == heap_d[child] and heap_v[child + 1] < heap_v[child])):
                    child += 1
                if heap_d[child] < td or (heap_d[child] == td and heap_v[child] < tv):
                    heap_v[pos] = heap_v[child]
                    heap_d[pos] = heap_d[child]
                    pos = child
                else:
                    break
            heap_v[pos] = tv
            heap_d[pos] = td
        if done[u]:
            continue
        done[u] = 1
        for e in range(indptr[u], indptr[u + 1]):
            w = indices[e]
            nd = d + weights[e]
            if nd < dist[w] or (nd == dist[w] and done[w] == 0 and u < pred[w]):
                dist[w] = nd
                pred[w] = u
                pos = size
                size += 1
                while pos > 0:
                    parent = (pos - 1) // 2
                    if heap_d[parent] > nd or (heap_d[parent] == nd and heap_v[parent] > w):
                        heap_v[pos] = heap_v[parent]
                        heap_d[pos] = heap_d[parent]
                        pos = parent
                    else:
                        break
                heap_v[pos] = w
                heap_d[pos] = nd


def all_pairs(indptr_in, indices_in, weights_in, sources=None):
    cdef cnp.ndarray[long, ndim=1] indptr = np.ascontiguousarray(indptr_in, dtype=np.int_)
    cdef cnp.ndarray[long, ndim=1] indices = np.ascontiguousarray(indices_in, dtype=np.int_)
    cdef cnp.ndarray[double, ndim=1] weights = np.ascontiguousarray(weights_in, dtype=np.float64)
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef Py_ssize_t m = indices.shape[0]
    if sources is None:
        sources = np.arange(n)
    cdef cnp.ndarray[long, ndim=1] src = np.ascontiguousarray(sources, dtype=np.int_)
    cdef Py_ssize_t ns = src.shape[0]
    cdef cnp.ndarray[double, ndim=2] dist = np.empty((ns, n))
    cdef cnp.ndarray[long, ndim=2] pred = np.empty((ns, n), dtype=np.int_)
    cdef Py_ssize_t cap = m + n + 1
    cdef long* heap_v = <long*>malloc(cap * sizeof(long))
    cdef double* heap_d = <double*>malloc(cap * sizeof(double))
    cdef char* done = <char*>malloc((n + 1) * sizeof(char))
    cdef Py_ssize_t row
    if heap_v == NULL or heap_d == NULL or done == NULL:
        free(heap_v); free(heap_d); free(done)
        raise MemoryError()
    try:
        with nogil:
            for row in range(ns):
                _dijkstra(n, &indptr[0] if n > 0 else NULL, &indices[0] if m > 0 else NULL,
                          &weights[0] if m > 0 else NULL, src[row],
                          &dist[row, 0], &pred[row, 0], heap_v, heap_d, done)
    finally:
        free(heap_v)
        free(heap_d)
        free(done)
    return dist, pred.astype(np.int64)
