"""honkit: memory-aware network models built from observed path data.

Turns a corpus of node sequences into stacked higher-order networks (states
are fixed-length subpaths), picks the memory length the data statistically
supports, and compares scenarios by structure, node ranking, and next-node
predictability.
"""

__version__ = "0.1.0"

from .analytics import (
    DegreeDistribution,
    StructuralReport,
    degree_distribution,
    multi_order_reports,
    structural_report,
)
from .compare import (
    ComparisonReport,
    FeatureVector,
    comparison_report,
    cosine_similarity,
    feature_vectors,
    kl_divergence,
)
from .corpus import PathCorpus, PathStats, parse_paths, path_stats, split_corpus, visit_counts
from .graph import AdjPowerStats, Graph, adj_power_stats, first_order_graph
from .hon import HigherOrderNetwork, MultiOrderModel, build_hon, build_multi_order, transition_prob
from .kernels import active_backend
from .prediction import PredictionOutcome, predict_next, prediction_accuracy
from .ranking import ScoreVector, aggregate_pagerank, hon_pagerank, kendall_tau, pagerank_alignment
from .selection import (
    LrtResult,
    OrderSelection,
    degrees_of_freedom,
    log_likelihood,
    lrt,
    optimal_order,
)
from .synth import PlantedChain, generate_corpus, random_planted_chain

__all__ = [
    "AdjPowerStats",
    "ComparisonReport",
    "DegreeDistribution",
    "FeatureVector",
    "Graph",
    "HigherOrderNetwork",
    "LrtResult",
    "MultiOrderModel",
    "OrderSelection",
    "PathCorpus",
    "PathStats",
    "PlantedChain",
    "PredictionOutcome",
    "ScoreVector",
    "StructuralReport",
    "active_backend",
    "adj_power_stats",
    "aggregate_pagerank",
    "build_hon",
    "build_multi_order",
    "comparison_report",
    "cosine_similarity",
    "degree_distribution",
    "degrees_of_freedom",
    "feature_vectors",
    "first_order_graph",
    "generate_corpus",
    "hon_pagerank",
    "kendall_tau",
    "kl_divergence",
    "log_likelihood",
    "lrt",
    "multi_order_reports",
    "optimal_order",
    "pagerank_alignment",
    "parse_paths",
    "path_stats",
    "predict_next",
    "prediction_accuracy",
    "random_planted_chain",
    "split_corpus",
    "structural_report",
    "transition_prob",
    "visit_counts",
]
