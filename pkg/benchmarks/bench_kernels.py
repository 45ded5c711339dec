#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Times the four hot paths (layer construction, likelihood evaluation,
prediction scoring, all-pairs BFS) on a seeded synthetic corpus and prints a
speedup table. Usage:

    python benchmarks/bench_kernels.py [--paths 20000] [--max-order 5]
"""

import argparse
import time

import numpy as np

from honkit.analytics import structural_report
from honkit.hon import build_multi_order
from honkit.kernels import pure
from honkit.synth import generate_corpus, random_planted_chain

try:
    from honkit.kernels import _fast
except ImportError:
    _fast = None


def timed(fn, *args, repeat=3):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--paths", type=int, default=20_000)
    parser.add_argument("--max-order", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    chain = random_planted_chain(30, 2, 4, 0.8, args.seed)
    corpus = generate_corpus(chain, args.paths, 8, 16, args.seed + 1)
    print(f"corpus: {corpus.n_instances} paths, {len(corpus.flat)} nodes visited")
    if _fast is None:
        print("compiled kernels not built; run pip install -e . first")

    model = build_multi_order(corpus, args.max_order)
    k = args.max_order
    interns = [None] + [model.layers[c].intern for c in range(1, k + 1)]
    logprobs = [None] + [model.layers[c].logprob_map() for c in range(1, k + 1)]
    best = [None] + [model.layers[c].best_next() for c in range(1, k + 1)]

    layer1 = model.layers[1]
    n1 = layer1.node_count
    order = np.lexsort((layer1.edge_to, layer1.edge_from))
    src = layer1.edge_from[order]
    dst = layer1.edge_to[order]
    indptr = np.zeros(n1 + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n1), out=indptr[1:])
    sources = np.arange(n1, dtype=np.int64)

    cases = [
        (
            "build_layers",
            (corpus.flat, corpus.offsets, corpus.mults, args.max_order, corpus.n_nodes),
        ),
        (
            "loglik_eval",
            (corpus.flat, corpus.offsets, corpus.mults, k, corpus.n_nodes,
             interns, logprobs, model.start_logp),
        ),
        (
            "prediction_eval",
            (corpus.flat, corpus.offsets, corpus.mults, k, corpus.n_nodes, interns, best),
        ),
        ("bfs_stats", (indptr, dst, sources, n1)),
    ]

    print(f"{'kernel':<18}{'pure':>10}{'compiled':>12}{'speedup':>10}")
    for name, call_args in cases:
        t_pure, ref = timed(getattr(pure, name), *call_args)
        if _fast is not None:
            t_fast, got = timed(getattr(_fast, name), *call_args)
            if name == "loglik_eval":
                assert abs(ref[0] - got[0]) < 1e-9 and ref[1] == got[1]
            elif name != "build_layers":
                assert ref == got
            print(f"{name:<18}{t_pure:>9.3f}s{t_fast:>11.3f}s{t_pure / t_fast:>9.1f}x")
        else:
            print(f"{name:<18}{t_pure:>9.3f}s{'-':>12}{'-':>10}")

    t0 = time.perf_counter()
    structural_report(model.layers[args.max_order])
    print(f"\nstructural_report(order {args.max_order}) end to end: "
          f"{time.perf_counter() - t0:.3f}s "
          f"({model.layers[args.max_order].node_count} states)")


if __name__ == "__main__":
    main()
