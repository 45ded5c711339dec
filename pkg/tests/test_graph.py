import itertools

import pytest

from honkit.corpus import PathCorpus, parse_paths
from honkit.graph import adj_power_stats, first_order_graph


def graph_of(text, fmt="lines"):
    return first_order_graph(parse_paths(text, fmt))


def test_single_path_edges():
    g = graph_of("a,b,c")
    assert g.n_nodes == 3
    assert g.edges_tokens() == [("a", "b", 1), ("b", "c", 1)]


def test_edge_counts_multiplicity_weighted():
    g = graph_of("a,b,2\na,b,c,1", fmt="ngram")
    assert dict(((u, v), c) for u, v, c in g.edges_tokens())[("a", "b")] == 3


def test_isolated_nodes_kept():
    g = graph_of("a,b\nz")
    assert g.n_nodes == 3
    assert g.n_edges == 1


def cycle_graph(n):
    nodes = [f"c{i}" for i in range(n)]
    path = nodes + [nodes[0]]
    return first_order_graph(PathCorpus.from_sequences([tuple(path)]))


def complete_digraph(n):
    nodes = [f"k{i}" for i in range(n)]
    seqs = [((u, v), 1) for u in nodes for v in nodes if u != v]
    return first_order_graph(PathCorpus.from_sequences(seqs))


def test_cycle_powers():
    g = cycle_graph(3)
    for i in range(1, 6):
        stats = adj_power_stats(g, i)
        assert stats.path_count == 3
        assert stats.nonzero_rows == 3


def test_complete_digraph_power_one():
    g = complete_digraph(3)
    stats = adj_power_stats(g, 1)
    assert stats.path_count == 6
    assert stats.nonzero_rows == 3


def test_power_one_counts_distinct_edges():
    g = graph_of("a,b,5\na,b,c,2\nc,a,1", fmt="ngram")
    assert adj_power_stats(g, 1).path_count == g.n_edges


def test_power_requires_positive_order():
    with pytest.raises(ValueError):
        adj_power_stats(cycle_graph(3), 0)


def brute_force_walks(adj, n, length):
    """Enumerate all walks of a given length; oracle for small graphs."""
    count = 0
    rows = set()
    frontier = {u: [(u,)] for u in range(n)}
    for u in range(n):
        walks = [(u,)]
        for _ in range(length):
            walks = [w + (v,) for w in walks for v in adj[w[-1]]]
        count += len(walks)
        if walks:
            rows.add(u)
    return count, len(rows)


def test_powers_match_walk_enumeration():
    import random

    rng = random.Random(5)
    for trial in range(30):
        n = rng.randint(2, 6)
        nodes = [f"n{i}" for i in range(n)]
        seqs = []
        for u, v in itertools.permutations(range(n), 2):
            if rng.random() < 0.4:
                seqs.append(((nodes[u], nodes[v]), 1))
        if not seqs:
            seqs = [((nodes[0], nodes[1]), 1)]
        g = first_order_graph(PathCorpus.from_sequences(seqs))
        adj = g.adjacency()
        for i in range(1, 5):
            stats = adj_power_stats(g, i)
            count, rows = brute_force_walks(adj, g.n_nodes, i)
            assert stats.path_count == count
            assert stats.nonzero_rows == rows


def test_no_overflow_on_dense_powers():
    # 12 walks per step compound quickly; Python integers must stay exact.
    g = complete_digraph(13)
    stats = adj_power_stats(g, 20)
    assert stats.path_count == 13 * 12**20
