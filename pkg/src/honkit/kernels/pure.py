"""Pure-Python kernel implementations.

These are the reference semantics for the hot loops; `honkit.kernels`
transparently swaps in the compiled Cython twin (`_fast`) when it is
available. Both backends must produce identical results, including state-id
assignment order, so everything iterates in corpus order.

State encoding: the layer-k state for the window (v1..vk) is interned
incrementally as `intern_k[parent_id * n_nodes + vk]`, where `parent_id` is
the layer-(k-1) id of (v1..v_{k-1}) and the empty layer-0 state has id 0.
Edge keys use the same packing: `from_id * n_nodes + next_node`.
"""

from __future__ import annotations

import numpy as np

_MAX_KEY = 2**62


def _check_key_space(total_positions: int, n_nodes: int) -> None:
    # State ids are bounded by the number of corpus positions; the packed
    # (id, node) key must stay inside int64 for the compiled twin.
    if (total_positions + 1) * max(n_nodes, 1) >= _MAX_KEY:
        raise OverflowError("corpus too large for packed state keys")


def build_layers(flat, offsets, mults, max_k, n_nodes):
    """Build layers 1..max_k in one pass over all corpus windows.

    Returns a list with one dict per layer k: `parent`, `last`, `suffix`
    (int64 arrays indexed by state id), `intern` (packed-key -> state id),
    and `edge_counts` (packed-key -> multiplicity-weighted count).
    """
    n = int(n_nodes)
    _check_key_space(len(flat), n)
    interns = [None] + [{} for _ in range(max_k)]
    parents = [None] + [[] for _ in range(max_k)]
    lasts = [None] + [[] for _ in range(max_k)]
    suffixes = [None] + [[] for _ in range(max_k)]
    edges = [None] + [{} for _ in range(max_k)]

    n_paths = len(offsets) - 1
    prev = [-1] * (max_k + 1)
    cur = [-1] * (max_k + 1)
    for p in range(n_paths):
        start = int(offsets[p])
        end = int(offsets[p + 1])
        m = int(mults[p])
        for c in range(1, max_k + 1):
            prev[c] = -1
        prev[0] = 0
        cur[0] = 0
        for t in range(start, end):
            v = int(flat[t])
            pos = t - start
            cmax = min(max_k, pos + 1)
            for c in range(1, cmax + 1):
                pid = prev[c - 1]
                key = pid * n + v
                intern = interns[c]
                sid = intern.get(key, -1)
                if sid < 0:
                    sid = len(parents[c])
                    intern[key] = sid
                    parents[c].append(pid)
                    lasts[c].append(v)
                    suffixes[c].append(cur[c - 1])
                cur[c] = sid
            for c in range(cmax + 1, max_k + 1):
                cur[c] = -1
            for c in range(1, max_k + 1):
                f = prev[c]
                if f >= 0:
                    ekey = f * n + v
                    layer_edges = edges[c]
                    layer_edges[ekey] = layer_edges.get(ekey, 0) + m
            prev, cur = cur, prev

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


def loglik_eval(flat, offsets, mults, k, n_nodes, interns, logprob_maps, start_logp):
    """Multiplicity-weighted total log-likelihood at evaluation order k.

    Each transition uses the layer of order min(k, available history).
    `interns[c]` and `logprob_maps[c]` are the per-layer lookup dicts for
    c = 1..k (index 0 unused); `start_logp[v]` is the log start probability.
    Returns (total, failed_path) where failed_path is the index of the first
    path hitting a zero-probability factor, or -1.
    """
    n = int(n_nodes)
    n_paths = len(offsets) - 1
    total = 0.0
    prev = [-1] * (k + 1)
    cur = [-1] * (k + 1)
    for p in range(n_paths):
        start = int(offsets[p])
        end = int(offsets[p + 1])
        m = int(mults[p])
        v0 = int(flat[start])
        if v0 < 0 or not np.isfinite(start_logp[v0]):
            return total, p
        acc = float(start_logp[v0])
        for c in range(1, k + 1):
            prev[c] = -1
        prev[0] = 0
        cur[0] = 0
        ok = True
        for t in range(start, end):
            v = int(flat[t])
            pos = t - start
            cmax = min(k, pos + 1)
            if v < 0:
                for c in range(1, k + 1):
                    cur[c] = -1
            else:
                for c in range(1, cmax + 1):
                    pid = prev[c - 1]
                    cur[c] = interns[c].get(pid * n + v, -1) if pid >= 0 else -1
                for c in range(cmax + 1, k + 1):
                    cur[c] = -1
            if pos >= 1:
                c = min(k, pos)
                sid = prev[c]
                lp = logprob_maps[c].get(sid * n + v) if (sid >= 0 and v >= 0) else None
                if lp is None:
                    ok = False
                    break
                acc += lp
            prev, cur = cur, prev
        if not ok:
            return total, p
        total += m * acc
    return total, -1


def prediction_eval(flat, offsets, mults, k, n_nodes, interns, best_next):
    """Top-1 next-node accuracy with back-off to shorter contexts.

    `best_next[c][sid]` is the precomputed argmax continuation for layer-c
    state `sid` (ties already resolved), or -1 when the state has no
    out-edges. Prediction at each position tries context length
    min(k, history) and backs off toward 1. Returns (correct, total, nones),
    all multiplicity-weighted.
    """
    n = int(n_nodes)
    n_paths = len(offsets) - 1
    correct = 0
    total = 0
    nones = 0
    prev = [-1] * (k + 1)
    cur = [-1] * (k + 1)
    for p in range(n_paths):
        start = int(offsets[p])
        end = int(offsets[p + 1])
        m = int(mults[p])
        for c in range(1, k + 1):
            prev[c] = -1
        prev[0] = 0
        cur[0] = 0
        for t in range(start, end):
            v = int(flat[t])
            pos = t - start
            cmax = min(k, pos + 1)
            if v < 0:
                for c in range(1, k + 1):
                    cur[c] = -1
            else:
                for c in range(1, cmax + 1):
                    pid = prev[c - 1]
                    cur[c] = interns[c].get(pid * n + v, -1) if pid >= 0 else -1
                for c in range(cmax + 1, k + 1):
                    cur[c] = -1
            if pos >= 1:
                pred = -1
                for c in range(min(k, pos), 0, -1):
                    sid = prev[c]
                    if sid >= 0:
                        cand = int(best_next[c][sid])
                        if cand >= 0:
                            pred = cand
                            break
                total += m
                if pred < 0:
                    nones += m
                elif pred == v:
                    correct += m
            prev, cur = cur, prev
    return correct, total, nones


def bfs_stats(indptr, indices, sources, n):
    """BFS from each source over a CSR digraph.

    Accumulates hop distances to every reached node other than the source
    itself. Returns (max_dist, total_dist, reached_pairs).
    """
    max_dist = 0
    total_dist = 0
    pairs = 0
    dist = np.empty(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    for s in sources:
        dist.fill(-1)
        dist[s] = 0
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            u = int(queue[head])
            head += 1
            du = int(dist[u])
            for j in range(int(indptr[u]), int(indptr[u + 1])):
                w = int(indices[j])
                if dist[w] < 0:
                    dist[w] = du + 1
                    queue[tail] = w
                    tail += 1
                    total_dist += du + 1
                    pairs += 1
                    if du + 1 > max_dist:
                        max_dist = du + 1
        # distances accumulated on discovery; nothing else per source
    return max_dist, total_dist, pairs
