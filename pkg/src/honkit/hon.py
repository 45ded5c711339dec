"""Higher-order networks and the stacked multi-order model.

A network of order k has one node per distinct contiguous k-node subpath
("window") in the corpus, and an edge from (v1..vk) to (v2..vk+1) for every
observed (k+1)-node window, weighted by multiplicity. Conditional transition
probabilities are the edge counts normalized per source state.
"""

from __future__ import annotations

from typing import Iterator, NamedTuple

import numpy as np

from . import kernels
from .corpus import PathCorpus
from .errors import EmptyCorpusError
from .graph import Graph, first_order_graph


class HonEdge(NamedTuple):
    source: tuple[str, ...]
    target: tuple[str, ...]
    count: int
    probability: float


class HigherOrderNetwork:
    """One fixed-order layer: states, transition counts, and probabilities.

    Immutable once built. State ids are dense integers in first-seen corpus
    order; `_chain` holds (parent, last) arrays of all lower layers so state
    tuples can be rendered without materializing them.
    """

    def __init__(self, order, tokens, layer, chain, interns):
        self.order = order
        self.tokens = tokens
        self.parent = layer["parent"]
        self.last = layer["last"]
        self.suffix = layer["suffix"]
        self.intern = layer["intern"]
        self.count_map = layer["edge_counts"]
        self._chain = chain  # [(parent, last)] for layers 1..order
        self._interns = interns  # [None, intern_1, ..., intern_order]
        self._index: dict[str, int] | None = None
        self._logprob_map: dict[int, float] | None = None
        self._best_next: np.ndarray | None = None
        self._finalize()

    def _finalize(self):
        n = len(self.tokens)
        n_states = len(self.parent)
        keys = np.fromiter(self.count_map.keys(), dtype=np.int64, count=len(self.count_map))
        keys.sort()
        counts = np.fromiter(
            (self.count_map[int(k)] for k in keys), dtype=np.int64, count=len(keys)
        )
        from_ids = keys // n if len(keys) else keys
        next_nodes = keys % n if len(keys) else keys
        self.edge_key = keys
        self.edge_from = from_ids
        self.edge_next = next_nodes
        self.edge_count = counts
        self.out_indptr = np.zeros(n_states + 1, dtype=np.int64)
        if n_states:
            np.cumsum(np.bincount(from_ids, minlength=n_states), out=self.out_indptr[1:])
        self.out_total = np.zeros(n_states, dtype=np.int64)
        if len(keys):
            np.add.at(self.out_total, from_ids, counts)
            self.edge_prob = counts / self.out_total[from_ids]
        else:
            self.edge_prob = np.zeros(0)
        # Destination state ids: suffix of the source plus the next node.
        if len(keys):
            sfx = self.suffix[from_ids]
            intern = self.intern
            self.edge_to = np.fromiter(
                (intern[int(s) * n + int(x)] for s, x in zip(sfx, next_nodes)),
                dtype=np.int64,
                count=len(keys),
            )
        else:
            self.edge_to = np.zeros(0, dtype=np.int64)

    # -- sizes ---------------------------------------------------------------

    @property
    def node_count(self) -> int:
        return len(self.parent)

    @property
    def edge_count_total(self) -> int:
        return len(self.edge_from)

    # -- state rendering and lookup -------------------------------------------

    def state_nodes(self, sid: int) -> tuple[int, ...]:
        out = []
        cur = sid
        for c in range(self.order, 0, -1):
            parent, last = self._chain[c - 1]
            out.append(int(last[cur]))
            cur = int(parent[cur])
        return tuple(reversed(out))

    def state_tokens(self, sid: int) -> tuple[str, ...]:
        return tuple(self.tokens[v] for v in self.state_nodes(sid))

    def state_id(self, state: tuple[str, ...]) -> int:
        """Dense id of a state given its token tuple, or -1 if unobserved."""
        if len(state) != self.order:
            return -1
        n = len(self.tokens)
        sid = 0
        for c, tok in enumerate(state, start=1):
            v = self._token_index(tok)
            if v is None:
                return -1
            sid = self._interns[c].get(sid * n + v, -1)
            if sid < 0:
                return -1
        return sid

    def _token_index(self, tok: str) -> int | None:
        if self._index is None:
            self._index = {t: i for i, t in enumerate(self.tokens)}
        return self._index.get(tok)

    def states(self) -> Iterator[tuple[str, ...]]:
        for sid in range(self.node_count):
            yield self.state_tokens(sid)

    def edges(self) -> Iterator[HonEdge]:
        for j in range(len(self.edge_from)):
            yield HonEdge(
                self.state_tokens(int(self.edge_from[j])),
                self.state_tokens(int(self.edge_to[j])),
                int(self.edge_count[j]),
                float(self.edge_prob[j]),
            )

    # -- derived lookup structures --------------------------------------------

    def logprob_map(self) -> dict[int, float]:
        """Packed-key -> ln(probability), for the likelihood kernel."""
        if self._logprob_map is None:
            if len(self.edge_key):
                self._logprob_map = dict(
                    zip(self.edge_key.tolist(), np.log(self.edge_prob).tolist())
                )
            else:
                self._logprob_map = {}
        return self._logprob_map

    def token_rank(self) -> np.ndarray:
        """rank[v] = position of tokens[v] in lexicographic token order."""
        order = sorted(range(len(self.tokens)), key=self.tokens.__getitem__)
        rank = np.empty(len(self.tokens), dtype=np.int64)
        for r, v in enumerate(order):
            rank[v] = r
        return rank

    def best_next(self) -> np.ndarray:
        """Argmax continuation per state; ties go to the smallest token.

        Entries are node indices, -1 for states without out-edges.
        """
        if self._best_next is None:
            best = np.full(self.node_count, -1, dtype=np.int64)
            if len(self.edge_from):
                rank = self.token_rank()
                order = np.lexsort((rank[self.edge_next], -self.edge_count, self.edge_from))
                sf = self.edge_from[order]
                first = np.empty(len(sf), dtype=bool)
                first[0] = True
                first[1:] = sf[1:] != sf[:-1]
                best[sf[first]] = self.edge_next[order[first]]
            self._best_next = best
        return self._best_next

    def to_csv_lines(self) -> Iterator[str]:
        """Serialize edges as `from,to,count,probability` rows.

        State tuples join their node tokens with `|`; rows are sorted by
        (source, target) token tuples for deterministic output.
        """
        rows = sorted(self.edges(), key=lambda e: (e.source, e.target))
        for e in rows:
            yield f"{'|'.join(e.source)},{'|'.join(e.target)},{e.count},{e.probability!r}"

    def __repr__(self) -> str:
        return (
            f"HigherOrderNetwork(order={self.order}, nodes={self.node_count}, "
            f"edges={self.edge_count_total})"
        )


class MultiOrderModel:
    """Layers of orders 1..max_order plus the empirical start distribution."""

    def __init__(self, corpus: PathCorpus, max_order: int):
        if max_order < 1:
            raise ValueError(f"max_order must be >= 1, got {max_order}")
        if corpus.n_distinct == 0:
            raise EmptyCorpusError("cannot build a model from an empty corpus")
        self.max_order = max_order
        self.tokens = list(corpus.tokens)
        self.index = dict(corpus.index)
        raw = kernels.build_layers(
            corpus.flat, corpus.offsets, corpus.mults, max_order, corpus.n_nodes
        )
        chain: list[tuple[np.ndarray, np.ndarray]] = []
        interns: list[dict | None] = [None]
        self.layers: dict[int, HigherOrderNetwork] = {}
        for k, layer in enumerate(raw, start=1):
            chain.append((layer["parent"], layer["last"]))
            interns.append(layer["intern"])
            self.layers[k] = HigherOrderNetwork(
                k, self.tokens, layer, list(chain), list(interns)
            )
        firsts = corpus.flat[corpus.offsets[:-1]]
        start_counts = np.bincount(firsts, weights=corpus.mults, minlength=corpus.n_nodes)
        self.start_probs = start_counts / start_counts.sum()
        with np.errstate(divide="ignore"):
            self.start_logp = np.log(self.start_probs)
        self.first_order_topology: Graph = first_order_graph(corpus)

    def start_distribution(self) -> dict[str, float]:
        return {
            tok: float(self.start_probs[i])
            for i, tok in enumerate(self.tokens)
            if self.start_probs[i] > 0
        }

    def map_corpus(self, corpus: PathCorpus) -> np.ndarray:
        """Interned node array of another corpus in this model's index.

        Tokens unknown to the model map to -1.
        """
        lookup = self.index
        return np.fromiter(
            (lookup.get(tok, -1) for i in range(corpus.n_distinct) for tok in corpus.path_tokens(i)),
            dtype=np.int64,
            count=len(corpus.flat),
        )


def build_multi_order(corpus: PathCorpus, max_k: int) -> MultiOrderModel:
    """Build layers 1..max_k and the start distribution from one corpus."""
    return MultiOrderModel(corpus, max_k)


def build_hon(corpus: PathCorpus, k: int) -> HigherOrderNetwork:
    """Build the fixed-order network of order k from a corpus."""
    return MultiOrderModel(corpus, k).layers[k]


def transition_prob(
    model: MultiOrderModel, history: tuple[str, ...], next_node: str, k: int
) -> float:
    """Conditional probability of the next node given the trailing context.

    Uses the layer of order min(k, len(history)); returns 0.0 whenever the
    context or the continuation was never observed.
    """
    if not history:
        raise ValueError("history must be non-empty")
    if not 1 <= k <= model.max_order:
        raise ValueError(f"order {k} outside model range 1..{model.max_order}")
    c = min(k, len(history))
    layer = model.layers[c]
    sid = layer.state_id(tuple(history[-c:]))
    if sid < 0:
        return 0.0
    v = model.index.get(next_node)
    if v is None:
        return 0.0
    count = layer.count_map.get(sid * len(model.tokens) + v)
    if count is None:
        return 0.0
    return count / int(layer.out_total[sid])
