"""Bundled public topologies and helpers to turn them into corpora."""

from __future__ import annotations

from importlib import resources

import random

from .corpus import PathCorpus


def classical_sioux_falls_corpus() -> PathCorpus:
    """The classical Sioux Falls topology (24 nodes, 76 directed links).

    Each link becomes one two-node path, so the order-1 network built from
    this corpus is exactly the benchmark topology.
    """
    text = resources.files("honkit.data").joinpath("sioux_falls_links.csv").read_text()
    seqs = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        u, v = line.split(",")
        seqs.append(((u, v), 1))
    return PathCorpus.from_sequences(seqs)


def random_walk_corpus(
    corpus: PathCorpus,
    n_paths: int,
    transition_lengths: list[int],
    length_weights: list[float],
    seed: int,
) -> PathCorpus:
    """Unbiased random walks over the first-order topology of a corpus.

    Walk lengths (in transitions) are drawn from `transition_lengths` with
    `length_weights`; start nodes cycle through the node universe so every
    node is covered. Used to synthesize short-trajectory traffic on a fixed
    road topology.
    """
    rng = random.Random(seed)
    adj: dict[str, list[str]] = {}
    for i in range(corpus.n_distinct):
        toks = corpus.path_tokens(i)
        for a, b in zip(toks, toks[1:]):
            adj.setdefault(a, []).append(b)
    for lst in adj.values():
        lst.sort()
    nodes = sorted(adj)
    seqs = []
    for j in range(n_paths):
        start = nodes[j % len(nodes)]
        steps = rng.choices(transition_lengths, weights=length_weights)[0]
        path = [start]
        for _ in range(steps):
            options = adj.get(path[-1])
            if not options:
                break
            path.append(rng.choice(options))
        seqs.append((tuple(path), 1))
    return PathCorpus.from_sequences(seqs)
