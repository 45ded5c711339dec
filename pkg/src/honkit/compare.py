"""Cross-scenario comparison: degree-distribution divergence, feature-vector
similarity across orders, and the combined representativeness report."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .analytics import (
    DegreeDistribution,
    StructuralReport,
    degree_distribution,
    multi_order_reports,
)
from .corpus import PathCorpus
from .hon import MultiOrderModel
from .prediction import prediction_accuracy
from .ranking import pagerank_alignment

FEATURE_METRICS = ("nodes", "edges", "diameter", "avg_sp", "density", "gcc_ratio")

_METRIC_FIELDS = {
    "nodes": "node_count",
    "edges": "edge_count",
    "diameter": "diameter",
    "avg_sp": "avg_shortest_path",
    "density": "density",
    "gcc_ratio": "gcc_ratio",
}


def kl_divergence(
    p: DegreeDistribution, q: DegreeDistribution, smoothing_epsilon: float = 1e-10
) -> float:
    """KL(p || q) in nats over the union support, with additive smoothing.

    Both mass functions get `smoothing_epsilon` added on every union-support
    point and are renormalized, so disjoint tails never divide by zero.
    """
    if smoothing_epsilon <= 0:
        raise ValueError(f"smoothing_epsilon must be positive, got {smoothing_epsilon}")
    support = sorted(set(p.pmf) | set(q.pmf))
    pv = np.array([p.pmf.get(d, 0.0) for d in support]) + smoothing_epsilon
    qv = np.array([q.pmf.get(d, 0.0) for d in support]) + smoothing_epsilon
    pv /= pv.sum()
    qv /= qv.sum()
    return float(np.sum(pv * np.log(pv / qv)))


@dataclass(frozen=True)
class FeatureVector:
    metric_name: str
    values: tuple[float, ...]


def feature_vectors(reports: list[StructuralReport]) -> list[FeatureVector]:
    """One raw-valued vector per structural metric, indexed by order 1..K."""
    if not reports:
        raise ValueError("no reports given")
    orders = [r.order for r in reports]
    if orders != list(range(1, len(reports) + 1)):
        raise ValueError(f"reports must cover contiguous orders from 1, got {orders}")
    out = []
    for name in FEATURE_METRICS:
        attr = _METRIC_FIELDS[name]
        out.append(FeatureVector(name, tuple(float(getattr(r, attr)) for r in reports)))
    return out


def cosine_similarity(u, v) -> float:
    """dot(u, v) / (|u| |v|); rejects empty, mismatched, or all-zero input."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape or u.ndim != 1 or len(u) < 1:
        raise ValueError("vectors must be 1-d, non-empty, and of equal length")
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        raise ValueError("cosine similarity is undefined for a zero vector")
    return float(np.dot(u, v) / (nu * nv))


@dataclass
class ComparisonReport:
    scenario_a: str
    scenario_b: str
    max_order: int
    cosine: dict[str, float] = field(default_factory=dict)
    kl: dict[int, float] = field(default_factory=dict)
    reports_a: list[StructuralReport] = field(default_factory=list)
    reports_b: list[StructuralReport] = field(default_factory=list)
    tau_a: dict[int, float | None] = field(default_factory=dict)
    tau_b: dict[int, float | None] = field(default_factory=dict)
    accuracy_a: dict[int, float] = field(default_factory=dict)
    accuracy_b: dict[int, float] = field(default_factory=dict)
    tau_delta: dict[int, float | None] = field(default_factory=dict)
    accuracy_delta: dict[int, float] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "scenario_a": self.scenario_a,
            "scenario_b": self.scenario_b,
            "max_order": self.max_order,
            "cosine": self.cosine,
            "kl": {str(k): v for k, v in self.kl.items()},
            "structure_a": [r.as_dict() for r in self.reports_a],
            "structure_b": [r.as_dict() for r in self.reports_b],
            "tau_a": {str(k): v for k, v in self.tau_a.items()},
            "tau_b": {str(k): v for k, v in self.tau_b.items()},
            "accuracy_a": {str(k): v for k, v in self.accuracy_a.items()},
            "accuracy_b": {str(k): v for k, v in self.accuracy_b.items()},
            "tau_delta": {str(k): v for k, v in self.tau_delta.items()},
            "accuracy_delta": {str(k): v for k, v in self.accuracy_delta.items()},
        }


def comparison_report(
    corpus_a: PathCorpus,
    corpus_b: PathCorpus,
    max_k: int,
    label_a: str = "a",
    label_b: str = "b",
    kl_epsilon: float = 1e-10,
    kl_direction: str = "out",
    damping: float = 0.85,
    exact_threshold: int = 20_000,
    seed: int = 42,
) -> ComparisonReport:
    """Side-by-side representativeness report for two scenarios.

    Emits per-metric cosine similarity of the order-indexed feature vectors,
    per-order KL divergence (a || b) of degree distributions, and per-order
    rank-agreement and prediction-accuracy curves with their deltas (a - b).
    """
    if corpus_a.n_distinct == 0 or corpus_b.n_distinct == 0:
        raise ValueError("both corpora must be non-empty")
    if max_k < 1:
        raise ValueError(f"max_k must be >= 1, got {max_k}")

    model_a = MultiOrderModel(corpus_a, max_k)
    model_b = MultiOrderModel(corpus_b, max_k)
    reports_a = multi_order_reports(corpus_a, max_k, exact_threshold, seed=seed, model=model_a)
    reports_b = multi_order_reports(corpus_b, max_k, exact_threshold, seed=seed, model=model_b)
    report = ComparisonReport(label_a, label_b, max_k, reports_a=reports_a, reports_b=reports_b)

    for fa, fb in zip(feature_vectors(reports_a), feature_vectors(reports_b)):
        report.cosine[fa.metric_name] = cosine_similarity(fa.values, fb.values)

    for k in range(1, max_k + 1):
        layer_a = model_a.layers[k]
        layer_b = model_b.layers[k]
        if layer_a.node_count and layer_b.node_count:
            report.kl[k] = kl_divergence(
                degree_distribution(layer_a, kl_direction),
                degree_distribution(layer_b, kl_direction),
                kl_epsilon,
            )
        else:
            report.kl[k] = math.nan
        report.accuracy_a[k] = prediction_accuracy(model_a, corpus_a, k)
        report.accuracy_b[k] = prediction_accuracy(model_b, corpus_b, k)
        report.accuracy_delta[k] = report.accuracy_a[k] - report.accuracy_b[k]

    align_a = pagerank_alignment(corpus_a, max_k, damping, model=model_a)
    align_b = pagerank_alignment(corpus_b, max_k, damping, model=model_b)
    for k in range(1, max_k + 1):
        ta = align_a[k]["tau"]
        tb = align_b[k]["tau"]
        report.tau_a[k] = ta
        report.tau_b[k] = tb
        report.tau_delta[k] = (ta - tb) if ta is not None and tb is not None else None
    return report
