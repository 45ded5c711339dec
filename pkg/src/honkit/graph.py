"""First-order directed graphs and adjacency-power walk statistics."""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import PathCorpus
from .errors import EmptyCorpusError


class Graph:
    """Directed graph over an interned node universe with edge counts.

    Immutable after construction. Node indices follow the owning corpus;
    `tokens[i]` recovers the original node ID.
    """

    def __init__(self, tokens: list[str], edge_counts: dict[tuple[int, int], int]):
        self.tokens = tokens
        self.index = {tok: i for i, tok in enumerate(tokens)}
        self.edge_counts = edge_counts
        self._adj: list[list[int]] | None = None

    @property
    def n_nodes(self) -> int:
        return len(self.tokens)

    @property
    def n_edges(self) -> int:
        return len(self.edge_counts)

    def adjacency(self) -> list[list[int]]:
        """Binarized out-adjacency lists, each sorted by node index."""
        if self._adj is None:
            adj: list[list[int]] = [[] for _ in range(self.n_nodes)]
            for u, v in self.edge_counts:
                adj[u].append(v)
            for lst in adj:
                lst.sort()
            self._adj = adj
        return self._adj

    def edges_tokens(self) -> list[tuple[str, str, int]]:
        """Edge list as (u, v, count), sorted by token pair."""
        rows = [
            (self.tokens[u], self.tokens[v], c) for (u, v), c in self.edge_counts.items()
        ]
        rows.sort(key=lambda r: (r[0], r[1]))
        return rows


def first_order_graph(corpus: PathCorpus) -> Graph:
    """Directed graph of observed transitions, multiplicity-weighted.

    All universe nodes appear, including nodes seen only in single-node paths.
    """
    if corpus.n_distinct == 0:
        raise EmptyCorpusError("cannot build a graph from an empty corpus")
    counts: dict[tuple[int, int], int] = {}
    for i in range(corpus.n_distinct):
        path = corpus.path_nodes(i)
        mult = int(corpus.mults[i])
        for a, b in zip(path, path[1:]):
            key = (a, b)
            counts[key] = counts.get(key, 0) + mult
    return Graph(list(corpus.tokens), counts)


@dataclass(frozen=True)
class AdjPowerStats:
    order: int
    path_count: int
    nonzero_rows: int


def adj_power_stats(graph: Graph, i: int) -> AdjPowerStats:
    """Walk statistics of the i-th power of the binarized adjacency matrix.

    `path_count` is the total number of length-i walks (the sum of all
    entries of A^i); `nonzero_rows` counts nodes with at least one outgoing
    length-i walk. Computed as i sparse matrix-vector products over Python
    integers, so counts are exact at any magnitude and can never wrap.
    """
    if i < 1:
        raise ValueError(f"power must be >= 1, got {i}")
    adj = graph.adjacency()
    # r[u] = number of length-j walks starting at u; starts as out-degrees.
    r = [len(adj[u]) for u in range(graph.n_nodes)]
    for _ in range(i - 1):
        r = [sum(r[v] for v in adj[u]) for u in range(graph.n_nodes)]
    path_count = sum(r)
    nonzero_rows = sum(1 for x in r if x > 0)
    return AdjPowerStats(i, path_count, nonzero_rows)
