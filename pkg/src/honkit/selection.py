"""Likelihoods, likelihood-ratio tests, and optimal memory-order selection.

A higher-order layer is strictly nested in the next one (every transition is
scored with the longest available context up to the evaluation order), so the
log-likelihood never decreases with order and the nested-model test statistic
is asymptotically chi-square with the parameter-count difference as degrees
of freedom.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import kernels
from .corpus import PathCorpus
from .errors import ConsistencyError, ZeroProbabilityError
from .graph import Graph, adj_power_stats
from .hon import MultiOrderModel
from .special import chi2_survival

LAMBDA_CLAMP = 1e-9


def log_likelihood(model: MultiOrderModel, corpus: PathCorpus, k: int) -> float:
    """Total log-likelihood of the corpus under the order-k evaluation.

    Each path contributes its start probability plus one conditional factor
    per transition, conditioning on the last min(k, history) nodes; paths are
    weighted by multiplicity. Raises ZeroProbabilityError when the model does
    not cover some path (model/corpus mismatch).
    """
    if not 1 <= k <= model.max_order:
        raise ValueError(f"order {k} outside model range 1..{model.max_order}")
    if corpus.n_distinct == 0:
        raise ValueError("corpus is empty")
    flat = _model_flat(model, corpus)
    interns = [None] + [model.layers[c].intern for c in range(1, k + 1)]
    logprob_maps = [None] + [model.layers[c].logprob_map() for c in range(1, k + 1)]
    total, failed = kernels.loglik_eval(
        flat, corpus.offsets, corpus.mults, k, len(model.tokens),
        interns, logprob_maps, model.start_logp,
    )
    if failed >= 0:
        raise ZeroProbabilityError(corpus.path_tokens(failed), k)
    return float(total)


def _model_flat(model: MultiOrderModel, corpus: PathCorpus):
    if corpus.tokens == model.tokens:
        return corpus.flat
    return model.map_corpus(corpus)


def degrees_of_freedom(topology: Graph, k: int) -> int:
    """Effective parameter count of the order-k model.

    The base term counts the fitted start distribution; each order i adds the
    number of length-i walks in the binarized topology minus the rows that
    can emit one (one normalization constraint per reachable context).
    """
    if topology.n_nodes == 0:
        raise ValueError("topology is empty")
    if k < 0:
        raise ValueError(f"order must be nonnegative, got {k}")
    d = topology.n_nodes - 1
    for i in range(1, k + 1):
        stats = adj_power_stats(topology, i)
        d += stats.path_count - stats.nonzero_rows
    return d


@dataclass(frozen=True)
class LrtResult:
    null_order: int
    alt_order: int
    lam: float
    delta_d: int
    p_value: float


def lrt(model: MultiOrderModel, corpus: PathCorpus, k: int) -> LrtResult:
    """Nested likelihood-ratio test of order k against order k+1."""
    if k + 1 > model.max_order:
        raise ValueError(f"need layers up to {k + 1}, model has {model.max_order}")
    ll_null = log_likelihood(model, corpus, k)
    ll_alt = log_likelihood(model, corpus, k + 1)
    return lrt_from_loglik(model.first_order_topology, k, ll_null, ll_alt)


def lrt_from_loglik(
    topology: Graph, k: int, ll_null: float, ll_alt: float
) -> LrtResult:
    """The test statistic, degrees of freedom, and p-value from raw pieces."""
    lam = -2.0 * (ll_null - ll_alt)
    if lam < 0.0:
        if lam < -LAMBDA_CLAMP:
            raise ConsistencyError(
                f"nested log-likelihoods out of order at k={k}: statistic {lam}"
            )
        lam = 0.0
    delta_d = degrees_of_freedom(topology, k + 1) - degrees_of_freedom(topology, k)
    if delta_d < 0:
        raise ConsistencyError(f"negative degrees-of-freedom difference at k={k}")
    p = chi2_survival(lam, delta_d)
    return LrtResult(k, k + 1, lam, delta_d, p)


@dataclass(frozen=True)
class OrderSelection:
    optimal_order: int
    trace: list[LrtResult] = field(default_factory=list)
    epsilon: float = 0.05
    truncated: bool = False


def optimal_order(
    model: MultiOrderModel, corpus: PathCorpus, epsilon: float, max_k: int
) -> OrderSelection:
    """Greedy forward selection of the memory order.

    Starting at k = 1, keep advancing while the order-(k+1) model improves the
    fit significantly (p < epsilon); return the last accepted order. When
    every test up to max_k - 1 is significant the search is truncated at
    max_k and flagged as such.
    """
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must be in (0, 1), got {epsilon}")
    if not 1 <= max_k <= model.max_order:
        raise ValueError(f"max_k {max_k} outside model range 1..{model.max_order}")
    trace: list[LrtResult] = []
    loglik = log_likelihood(model, corpus, 1)
    k = 1
    while k < max_k:
        ll_alt = log_likelihood(model, corpus, k + 1)
        result = lrt_from_loglik(model.first_order_topology, k, loglik, ll_alt)
        trace.append(result)
        if result.p_value >= epsilon:
            return OrderSelection(k, trace, epsilon, truncated=False)
        loglik = ll_alt
        k += 1
    return OrderSelection(max_k, trace, epsilon, truncated=True)
