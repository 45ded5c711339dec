# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; semantics identical to honkit.kernels.pure.

State-id assignment, edge keys, and accumulation order all mirror the pure
implementation bit for bit so both backends are interchangeable.
"""

from libc.math cimport isfinite
from libc.stdlib cimport free, malloc

import numpy as np

cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t i64

_MAX_KEY = 2**62


def build_layers(flat, offsets, mults, int max_k, n_nodes):
    cdef i64 n = int(n_nodes)
    if (len(flat) + 1) * max(n, 1) >= _MAX_KEY:
        raise OverflowError("corpus too large for packed state keys")
    cdef i64[:] flat_v = np.ascontiguousarray(flat, dtype=np.int64)
    cdef i64[:] offsets_v = np.ascontiguousarray(offsets, dtype=np.int64)
    cdef i64[:] mults_v = np.ascontiguousarray(mults, dtype=np.int64)

    interns = [None] + [{} for _ in range(max_k)]
    parents = [None] + [[] for _ in range(max_k)]
    lasts = [None] + [[] for _ in range(max_k)]
    suffixes = [None] + [[] for _ in range(max_k)]
    edges = [None] + [{} for _ in range(max_k)]

    cdef i64 *prev = <i64 *> malloc((max_k + 1) * sizeof(i64))
    cdef i64 *cur = <i64 *> malloc((max_k + 1) * sizeof(i64))
    cdef i64 *tmp
    if prev == NULL or cur == NULL:
        free(prev)
        free(cur)
        raise MemoryError()

    cdef Py_ssize_t n_paths = len(offsets_v) - 1
    cdef Py_ssize_t p, t
    cdef i64 start, end, m, v, pid, f, sid_c
    cdef int c, cmax, pos
    cdef object key, sid, old
    cdef dict intern_c, edges_c
    cdef list parents_c, lasts_c, suffixes_c

    try:
        for p in range(n_paths):
            start = offsets_v[p]
            end = offsets_v[p + 1]
            m = mults_v[p]
            for c in range(1, max_k + 1):
                prev[c] = -1
            prev[0] = 0
            cur[0] = 0
            for t in range(start, end):
                v = flat_v[t]
                pos = <int> (t - start)
                cmax = max_k if max_k < pos + 1 else pos + 1
                for c in range(1, cmax + 1):
                    pid = prev[c - 1]
                    key = pid * n + v
                    intern_c = <dict> interns[c]
                    sid = intern_c.get(key)
                    if sid is None:
                        parents_c = <list> parents[c]
                        sid_c = len(parents_c)
                        intern_c[key] = sid_c
                        parents_c.append(pid)
                        (<list> lasts[c]).append(v)
                        (<list> suffixes[c]).append(cur[c - 1])
                    else:
                        sid_c = <i64> sid
                    cur[c] = sid_c
                for c in range(cmax + 1, max_k + 1):
                    cur[c] = -1
                for c in range(1, max_k + 1):
                    f = prev[c]
                    if f >= 0:
                        key = f * n + v
                        edges_c = <dict> edges[c]
                        old = edges_c.get(key)
                        if old is None:
                            edges_c[key] = m
                        else:
                            edges_c[key] = old + m
                tmp = prev
                prev = cur
                cur = tmp
    finally:
        free(prev)
        free(cur)

    out = []
    for c in range(1, max_k + 1):
        out.append(
            {
                "parent": np.asarray(parents[c], dtype=np.int64),
                "last": np.asarray(lasts[c], dtype=np.int64),
                "suffix": np.asarray(suffixes[c], dtype=np.int64),
                "intern": interns[c],
                "edge_counts": edges[c],
            }
        )
    return out


def loglik_eval(flat, offsets, mults, int k, n_nodes, interns, logprob_maps, start_logp):
    cdef i64 n = int(n_nodes)
    cdef i64[:] flat_v = np.ascontiguousarray(flat, dtype=np.int64)
    cdef i64[:] offsets_v = np.ascontiguousarray(offsets, dtype=np.int64)
    cdef i64[:] mults_v = np.ascontiguousarray(mults, dtype=np.int64)
    cdef double[:] start_v = np.ascontiguousarray(start_logp, dtype=np.float64)

    cdef i64 *prev = <i64 *> malloc((k + 1) * sizeof(i64))
    cdef i64 *cur = <i64 *> malloc((k + 1) * sizeof(i64))
    cdef i64 *tmp
    if prev == NULL or cur == NULL:
        free(prev)
        free(cur)
        raise MemoryError()

    cdef Py_ssize_t n_paths = len(offsets_v) - 1
    cdef Py_ssize_t p, t
    cdef i64 start, end, m, v, v0, pid, sid
    cdef int c, cmax, pos
    cdef double total = 0.0, acc
    cdef bint ok
    cdef object lp

    try:
        for p in range(n_paths):
            start = offsets_v[p]
            end = offsets_v[p + 1]
            m = mults_v[p]
            v0 = flat_v[start]
            if v0 < 0 or not isfinite(start_v[v0]):
                return total, p
            acc = start_v[v0]
            for c in range(1, k + 1):
                prev[c] = -1
            prev[0] = 0
            cur[0] = 0
            ok = True
            for t in range(start, end):
                v = flat_v[t]
                pos = <int> (t - start)
                cmax = k if k < pos + 1 else pos + 1
                if v < 0:
                    for c in range(1, k + 1):
                        cur[c] = -1
                else:
                    for c in range(1, cmax + 1):
                        pid = prev[c - 1]
                        if pid >= 0:
                            cur[c] = (<dict> interns[c]).get(pid * n + v, -1)
                        else:
                            cur[c] = -1
                    for c in range(cmax + 1, k + 1):
                        cur[c] = -1
                if pos >= 1:
                    c = k if k < pos else pos
                    sid = prev[c]
                    lp = None
                    if sid >= 0 and v >= 0:
                        lp = (<dict> logprob_maps[c]).get(sid * n + v)
                    if lp is None:
                        ok = False
                        break
                    acc += <double> lp
                tmp = prev
                prev = cur
                cur = tmp
            if not ok:
                return total, p
            total += m * acc
    finally:
        free(prev)
        free(cur)
    return total, -1


def prediction_eval(flat, offsets, mults, int k, n_nodes, interns, best_next):
    cdef i64 n = int(n_nodes)
    cdef i64[:] flat_v = np.ascontiguousarray(flat, dtype=np.int64)
    cdef i64[:] offsets_v = np.ascontiguousarray(offsets, dtype=np.int64)
    cdef i64[:] mults_v = np.ascontiguousarray(mults, dtype=np.int64)

    # Flatten the per-layer best-next arrays into typed views once.
    cdef list best_views = [None]
    cdef int ci
    for ci in range(1, k + 1):
        best_views.append(np.ascontiguousarray(best_next[ci], dtype=np.int64))

    cdef i64 *prev = <i64 *> malloc((k + 1) * sizeof(i64))
    cdef i64 *cur = <i64 *> malloc((k + 1) * sizeof(i64))
    cdef i64 *tmp
    if prev == NULL or cur == NULL:
        free(prev)
        free(cur)
        raise MemoryError()

    cdef Py_ssize_t n_paths = len(offsets_v) - 1
    cdef Py_ssize_t p, t
    cdef i64 start, end, m, v, pid, sid, pred, cand
    cdef i64 correct = 0, total = 0, nones = 0
    cdef int c, cmax, pos
    cdef i64[:] bv

    try:
        for p in range(n_paths):
            start = offsets_v[p]
            end = offsets_v[p + 1]
            m = mults_v[p]
            for c in range(1, k + 1):
                prev[c] = -1
            prev[0] = 0
            cur[0] = 0
            for t in range(start, end):
                v = flat_v[t]
                pos = <int> (t - start)
                cmax = k if k < pos + 1 else pos + 1
                if v < 0:
                    for c in range(1, k + 1):
                        cur[c] = -1
                else:
                    for c in range(1, cmax + 1):
                        pid = prev[c - 1]
                        if pid >= 0:
                            cur[c] = (<dict> interns[c]).get(pid * n + v, -1)
                        else:
                            cur[c] = -1
                    for c in range(cmax + 1, k + 1):
                        cur[c] = -1
                if pos >= 1:
                    pred = -1
                    c = k if k < pos else pos
                    while c > 0:
                        sid = prev[c]
                        if sid >= 0:
                            bv = best_views[c]
                            cand = bv[sid]
                            if cand >= 0:
                                pred = cand
                                break
                        c -= 1
                    total += m
                    if pred < 0:
                        nones += m
                    elif pred == v:
                        correct += m
                tmp = prev
                prev = cur
                cur = tmp
    finally:
        free(prev)
        free(cur)
    return correct, total, nones


def bfs_stats(indptr, indices, sources, n):
    cdef i64[:] indptr_v = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef i64[:] indices_v = np.ascontiguousarray(indices, dtype=np.int64)
    cdef i64[:] sources_v = np.ascontiguousarray(sources, dtype=np.int64)
    cdef i64 nn = int(n)

    dist_arr = np.empty(nn, dtype=np.int64)
    queue_arr = np.empty(nn, dtype=np.int64)
    cdef i64[:] dist = dist_arr
    cdef i64[:] queue = queue_arr

    cdef i64 max_dist = 0, total_dist = 0, pairs = 0
    cdef i64 s, u, w, du, head, tail
    cdef Py_ssize_t si, j, i

    for si in range(len(sources_v)):
        s = sources_v[si]
        for i in range(nn):
            dist[i] = -1
        dist[s] = 0
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u]
            for j in range(indptr_v[u], indptr_v[u + 1]):
                w = indices_v[j]
                if dist[w] < 0:
                    dist[w] = du + 1
                    queue[tail] = w
                    tail += 1
                    total_dist += du + 1
                    pairs += 1
                    if du + 1 > max_dist:
                        max_dist = du + 1
    return int(max_dist), int(total_dist), int(pairs)
