"""Higher-order PageRank, aggregation to physical nodes, and rank agreement."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .corpus import PathCorpus, visit_counts
from .hon import HigherOrderNetwork, MultiOrderModel


@dataclass
class ScoreVector:
    """Normalized nonnegative scores keyed by state tuple or node token."""

    scores: dict = field(default_factory=dict)
    converged: bool = True
    iterations: int = 0


def hon_pagerank(
    hon: HigherOrderNetwork,
    damping: float = 0.85,
    tol: float = 1e-12,
    max_iter: int = 1000,
) -> ScoreVector:
    """Stationary distribution of a damped random walk on the layer.

    Teleportation is uniform over the layer's states and dangling states
    spread their mass uniformly, so the iterate stays a probability vector.
    Iteration stops when the L1 change drops below `tol`; hitting `max_iter`
    first clears the converged flag but still returns the last iterate.
    """
    if hon.node_count < 1:
        raise ValueError("network has no nodes")
    if not 0.0 < damping < 1.0:
        raise ValueError(f"damping must be in (0, 1), got {damping}")
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    n = hon.node_count
    x = np.full(n, 1.0 / n)
    src = hon.edge_from
    dst = hon.edge_to
    p = hon.edge_prob
    dangling = np.diff(hon.out_indptr) == 0
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        flow = np.bincount(dst, weights=x[src] * p, minlength=n) if len(src) else np.zeros(n)
        dangling_mass = float(x[dangling].sum())
        new_x = damping * (flow + dangling_mass / n) + (1.0 - damping) / n
        delta = float(np.abs(new_x - x).sum())
        x = new_x
        if delta < tol:
            converged = True
            break
    scores = {hon.state_tokens(sid): float(x[sid]) for sid in range(n)}
    return ScoreVector(scores, converged, iterations)


def aggregate_pagerank(scores: ScoreVector) -> ScoreVector:
    """Collapse state scores onto physical nodes via each state's last entry."""
    agg: dict[str, float] = {}
    for state, value in scores.scores.items():
        node = state[-1] if isinstance(state, tuple) else state
        agg[node] = agg.get(node, 0.0) + value
    return ScoreVector(agg, scores.converged, scores.iterations)


def _merge_count(values: list) -> int:
    """Number of strict inversions, by merge sort. Mutates its argument."""
    n = len(values)
    if n < 2:
        return 0
    buf = values[:]
    inversions = 0
    width = 1
    while width < n:
        for lo in range(0, n, 2 * width):
            mid = min(lo + width, n)
            hi = min(lo + 2 * width, n)
            i, j, out = lo, mid, lo
            while i < mid and j < hi:
                if values[j] < values[i]:
                    buf[out] = values[j]
                    inversions += mid - i
                    j += 1
                else:
                    buf[out] = values[i]
                    i += 1
                out += 1
            buf[out : out + mid - i] = values[i:mid]
            buf[out + mid - i : hi] = values[j:hi]
        values, buf = buf, values
        width *= 2
    return inversions


def _tie_term(values: list) -> int:
    """Sum of g*(g-1)/2 over runs of equal values in a sorted list."""
    total = 0
    run = 1
    for a, b in zip(values, values[1:]):
        if a == b:
            run += 1
        else:
            total += run * (run - 1) // 2
            run = 1
    total += run * (run - 1) // 2
    return total


def kendall_tau(x: dict, y: dict) -> float:
    """Tie-corrected rank correlation (tau-b) over the shared key set.

    Knight's O(n log n) algorithm: sort by (x, y), count discordant pairs as
    strict inversions of the y sequence, and correct both margins for ties.
    All counting is integer arithmetic, so untied identical or reversed
    rankings give exactly +/-1. When one side is completely tied the
    coefficient is undefined and 0.0 is returned by convention.
    """
    shared = sorted(set(x) & set(y))
    if len(shared) < 2:
        raise ValueError(f"need at least 2 shared keys, got {len(shared)}")
    pairs = sorted((x[k], y[k]) for k in shared)
    n = len(pairs)
    n0 = n * (n - 1) // 2
    xs = [p[0] for p in pairs]
    ys = [p[1] for p in pairs]
    ties_x = _tie_term(xs)
    ties_xy = _tie_term(pairs)
    discordant = _merge_count(ys[:])
    ties_y = _tie_term(sorted(ys))
    denom_x = n0 - ties_x
    denom_y = n0 - ties_y
    if denom_x == 0 or denom_y == 0:
        return 0.0
    concordant = n0 - ties_x - ties_y + ties_xy - discordant
    return (concordant - discordant) / math.sqrt(denom_x * denom_y)


def pagerank_alignment(
    corpus: PathCorpus,
    max_k: int,
    damping: float = 0.85,
    tol: float = 1e-12,
    max_iter: int = 1000,
    model: MultiOrderModel | None = None,
) -> dict[int, dict]:
    """Per-order agreement between aggregated PageRank and visit counts.

    Returns {order: {"tau", "converged", "iterations"}} for orders 1..max_k;
    empty layers report tau = None. Pass a prebuilt `model` to reuse layers.
    """
    if max_k < 1:
        raise ValueError(f"max_k must be >= 1, got {max_k}")
    usage = {tok: float(c) for tok, c in visit_counts(corpus).items()}
    if model is None:
        model = MultiOrderModel(corpus, max_k)
    elif model.max_order < max_k:
        raise ValueError(f"model has max_order {model.max_order}, need {max_k}")
    out: dict[int, dict] = {}
    for k in range(1, max_k + 1):
        layer = model.layers[k]
        if layer.node_count == 0:
            out[k] = {"tau": None, "converged": True, "iterations": 0}
            continue
        pr = hon_pagerank(layer, damping, tol, max_iter)
        agg = aggregate_pagerank(pr)
        tau = kendall_tau(agg.scores, usage)
        out[k] = {"tau": tau, "converged": pr.converged, "iterations": pr.iterations}
    return out
