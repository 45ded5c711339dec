"""Seeded synthetic corpora with a planted memory order.

The generator builds a Markov source whose next-node distribution genuinely
depends on the full length-m context: all contexts sharing the same trailing
(m-1) nodes draw from one candidate set, but which candidate carries the
concentrated probability mass is decided by the context's oldest node. A
model with memory shorter than m therefore sees a mixed distribution where
the true source is nearly deterministic.
"""

from __future__ import annotations

import itertools
import math
import random
from bisect import bisect_left
from dataclasses import dataclass

from .corpus import PathCorpus

_MAX_CONTEXTS = 500_000


@dataclass(frozen=True)
class PlantedChain:
    order: int
    nodes: tuple[str, ...]
    table: dict[tuple[str, ...], tuple[tuple[str, ...], tuple[float, ...]]]
    start: dict[tuple[str, ...], float]
    seed: int

    def distribution(self, context: tuple[str, ...]) -> dict[str, float]:
        supports, probs = self.table[context]
        return dict(zip(supports, probs))


def random_planted_chain(
    node_count: int,
    order: int,
    branching: int,
    determinism: float,
    seed: int,
) -> PlantedChain:
    """Construct a seeded chain of the given memory order.

    Each trailing-(m-1) suffix gets a fixed candidate set of `branching`
    continuations; the context's oldest node selects which candidate receives
    probability mass `determinism` on top of the uniform share, so contexts
    that agree on their suffix but differ in the oldest node prefer different
    continuations. The start distribution is uniform over all contexts.
    """
    if branching < 2:
        raise ValueError(f"branching must be >= 2, got {branching}")
    if node_count < branching:
        raise ValueError(f"need node_count >= branching, got {node_count} < {branching}")
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    if not 0.0 <= determinism <= 1.0:
        raise ValueError(f"determinism must be in [0, 1], got {determinism}")
    if node_count**order > _MAX_CONTEXTS:
        raise ValueError(
            f"{node_count}^{order} contexts exceed the construction limit {_MAX_CONTEXTS}"
        )

    rng = random.Random(seed)
    width = len(str(node_count - 1))
    nodes = tuple(f"n{i:0{width}d}" for i in range(node_count))

    # Seeded permutation rank of each node; the oldest context node picks the
    # preferred candidate via this rank, guaranteeing disagreement within a
    # suffix group (ranks cover 0..n-1, so they cannot all collide mod b).
    perm = list(nodes)
    rng.shuffle(perm)
    rank = {tok: i for i, tok in enumerate(perm)}

    candidates: dict[tuple[str, ...], tuple[str, ...]] = {}
    for suffix in itertools.product(nodes, repeat=order - 1):
        candidates[suffix] = tuple(sorted(rng.sample(nodes, branching)))

    base = (1.0 - determinism) / branching
    table = {}
    for context in itertools.product(nodes, repeat=order):
        suffix = context[1:]
        cand = candidates[suffix]
        preferred = rank[context[0]] % branching
        probs = tuple(
            base + determinism if j == preferred else base for j in range(branching)
        )
        if determinism == 1.0:
            table[context] = ((cand[preferred],), (1.0,))
        else:
            table[context] = (cand, probs)

    n_contexts = node_count**order
    start = {ctx: 1.0 / n_contexts for ctx in table}
    return PlantedChain(order, nodes, table, start, seed)


def generate_corpus(
    chain: PlantedChain,
    n_paths: int,
    min_len: int,
    max_len: int,
    seed: int,
) -> PathCorpus:
    """Sample trajectories from a planted chain.

    Path lengths (in nodes) are uniform on [min_len, max_len]; each path
    starts from a context drawn from the chain's start distribution and then
    follows the planted transition table. Fully determined by `seed`.
    """
    if n_paths < 1:
        raise ValueError(f"n_paths must be >= 1, got {n_paths}")
    if not chain.order <= min_len <= max_len:
        raise ValueError(
            f"need order <= min_len <= max_len, got {chain.order}, {min_len}, {max_len}"
        )
    rng = random.Random(seed)
    contexts = list(chain.start.keys())
    # Cumulative weights for the (uniform) start draw keep the API general.
    start_cum = list(itertools.accumulate(chain.start[c] for c in contexts))
    paths = []
    for _ in range(n_paths):
        length = rng.randint(min_len, max_len)
        idx = bisect_left(start_cum, rng.random() * start_cum[-1])
        context = contexts[min(idx, len(contexts) - 1)]
        path = list(context[:length])
        while len(path) < length:
            supports, probs = chain.table[context]
            if len(supports) == 1:
                nxt = supports[0]
            else:
                r = rng.random()
                acc = 0.0
                nxt = supports[-1]
                for tok, pr in zip(supports, probs):
                    acc += pr
                    if r < acc:
                        nxt = tok
                        break
            path.append(nxt)
            context = tuple(path[-chain.order:])
        paths.append((tuple(path), 1))
    return PathCorpus.from_sequences(paths)


def conditional_entropy(corpus: PathCorpus, context_len: int) -> float:
    """Empirical entropy of the next node given the trailing context, in nats.

    Estimated from all multiplicity-weighted windows of context_len + 1
    nodes; used to verify that conditioning on the planted order reduces
    uncertainty relative to shorter contexts.
    """
    joint: dict[tuple, int] = {}
    for i in range(corpus.n_distinct):
        path = corpus.path_nodes(i)
        m = int(corpus.mults[i])
        for j in range(len(path) - context_len):
            window = path[j : j + context_len + 1]
            joint[window] = joint.get(window, 0) + m
    total = sum(joint.values())
    if total == 0:
        raise ValueError(f"no windows of {context_len + 1} nodes in corpus")
    ctx_totals: dict[tuple, int] = {}
    for window, c in joint.items():
        ctx = window[:-1]
        ctx_totals[ctx] = ctx_totals.get(ctx, 0) + c
    h = 0.0
    for window, c in joint.items():
        p_joint = c / total
        p_cond = c / ctx_totals[window[:-1]]
        h -= p_joint * math.log(p_cond)
    return h
