"""Structural metrics and degree distributions of higher-order layers.

Distances are unweighted directed hop counts. Diameter and average shortest
path are taken over ordered reachable pairs inside the largest weakly
connected component; unreachable pairs are excluded rather than treated as
infinite, which keeps both metrics well defined once high orders fragment.

Density is edge_count / (n * (n - 1)), the loop-free digraph convention;
corpora containing immediate self-transitions (a node followed by itself)
produce self-loop edges that count toward the numerator, so degenerate
near-complete layers can exceed 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .corpus import PathCorpus
from .hon import HigherOrderNetwork, MultiOrderModel

EXACT_SP_THRESHOLD = 20_000
SAMPLE_SOURCES = 1_000


@dataclass(frozen=True)
class StructuralReport:
    order: int
    node_count: int
    edge_count: int
    mean_in_degree: float
    mean_out_degree: float
    diameter: int
    avg_shortest_path: float
    density: float
    gcc_ratio: float
    estimated: bool = False

    def as_dict(self) -> dict:
        return {
            "order": self.order,
            "nodes": self.node_count,
            "edges": self.edge_count,
            "mean_in_degree": self.mean_in_degree,
            "mean_out_degree": self.mean_out_degree,
            "diameter": self.diameter,
            "avg_shortest_path": self.avg_shortest_path,
            "density": self.density,
            "gcc_ratio": self.gcc_ratio,
            "estimated": self.estimated,
        }


def _weak_components(n: int, src: np.ndarray, dst: np.ndarray) -> np.ndarray:
    """Component label per node, via union-find over undirected edges."""
    parent = list(range(n))

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for a, b in zip(src.tolist(), dst.tolist()):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra
    return np.fromiter((find(x) for x in range(n)), dtype=np.int64, count=n)


def structural_report(
    hon: HigherOrderNetwork,
    exact_threshold: int = EXACT_SP_THRESHOLD,
    sample_sources: int = SAMPLE_SOURCES,
    seed: int = 42,
) -> StructuralReport:
    """Structural metrics of one layer.

    Above `exact_threshold` nodes the distance metrics are estimated from a
    seeded sample of BFS sources and the report is flagged as estimated. A
    zero-node layer yields the all-zero report; a single-node component has
    diameter 0 and average shortest path 0 by convention.
    """
    n = hon.node_count
    e = hon.edge_count_total
    if n == 0:
        return StructuralReport(hon.order, 0, 0, 0.0, 0.0, 0, 0.0, 0.0, 0.0)
    mean_deg = e / n
    density = e / (n * (n - 1)) if n >= 2 else 0.0

    labels = _weak_components(n, hon.edge_from, hon.edge_to)
    sizes = np.bincount(labels, minlength=n)
    gcc_label = int(np.argmax(sizes))
    gcc_size = int(sizes[gcc_label])
    gcc_ratio = gcc_size / n

    members = np.flatnonzero(labels == gcc_label)
    diameter, avg_sp, estimated = _distance_metrics(
        hon, members, exact_threshold, sample_sources, seed
    )
    return StructuralReport(
        hon.order, n, e, mean_deg, mean_deg, diameter, avg_sp, density, gcc_ratio, estimated
    )


def _distance_metrics(hon, members, exact_threshold, sample_sources, seed):
    if len(members) <= 1:
        return 0, 0.0, False
    remap = np.full(hon.node_count, -1, dtype=np.int64)
    remap[members] = np.arange(len(members), dtype=np.int64)
    mask = remap[hon.edge_from] >= 0
    src = remap[hon.edge_from[mask]]
    dst = remap[hon.edge_to[mask]]
    m = len(members)
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    indptr = np.zeros(m + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=m), out=indptr[1:])

    estimated = hon.node_count > exact_threshold
    if estimated:
        rng = np.random.default_rng(seed)
        sources = np.sort(rng.choice(m, size=min(sample_sources, m), replace=False))
    else:
        sources = np.arange(m, dtype=np.int64)
    max_dist, total_dist, pairs = kernels.bfs_stats(indptr, dst, sources, m)
    avg_sp = total_dist / pairs if pairs else 0.0
    return int(max_dist), float(avg_sp), bool(estimated)


@dataclass(frozen=True)
class DegreeDistribution:
    direction: str
    pmf: dict[int, float]


def degree_distribution(hon: HigherOrderNetwork, direction: str = "out") -> DegreeDistribution:
    """Degree probability mass function over states, isolated states included."""
    if direction not in ("in", "out", "total"):
        raise ValueError(f"direction must be in/out/total, got {direction!r}")
    n = hon.node_count
    if n == 0:
        raise ValueError("network has no nodes")
    out_deg = np.diff(hon.out_indptr)
    in_deg = np.bincount(hon.edge_to, minlength=n) if len(hon.edge_to) else np.zeros(n, dtype=np.int64)
    if direction == "out":
        deg = out_deg
    elif direction == "in":
        deg = in_deg
    else:
        deg = out_deg + in_deg
    counts = np.bincount(deg.astype(np.int64))
    pmf = {int(d): float(c / n) for d, c in enumerate(counts) if c > 0}
    return DegreeDistribution(direction, pmf)


def multi_order_reports(
    corpus: PathCorpus,
    max_k: int,
    exact_threshold: int = EXACT_SP_THRESHOLD,
    sample_sources: int = SAMPLE_SOURCES,
    seed: int = 42,
    model: MultiOrderModel | None = None,
) -> list[StructuralReport]:
    """Structural reports for every order 1..max_k of one corpus.

    Pass a prebuilt `model` (with max_order >= max_k) to reuse its layers.
    """
    if max_k < 1:
        raise ValueError(f"max_k must be >= 1, got {max_k}")
    if model is None:
        model = MultiOrderModel(corpus, max_k)
    elif model.max_order < max_k:
        raise ValueError(f"model has max_order {model.max_order}, need {max_k}")
    return [
        structural_report(model.layers[k], exact_threshold, sample_sources, seed)
        for k in range(1, max_k + 1)
    ]
