import itertools
import random

import numpy as np
import pytest

from honkit.corpus import PathCorpus, parse_paths
from honkit.hon import build_hon
from honkit.ranking import (
    aggregate_pagerank,
    hon_pagerank,
    kendall_tau,
    pagerank_alignment,
)


def dense_pagerank_oracle(hon, damping, iters=40000, tol=1e-14):
    """Straightforward dense power iteration with dangling redistribution."""
    n = hon.node_count
    P = np.zeros((n, n))
    for j in range(hon.edge_count_total):
        P[int(hon.edge_from[j]), int(hon.edge_to[j])] = hon.edge_prob[j]
    dangling = P.sum(axis=1) == 0
    x = np.full(n, 1.0 / n)
    for _ in range(iters):
        new_x = damping * (P.T @ x + x[dangling].sum() / n) + (1 - damping) / n
        if np.abs(new_x - x).sum() < tol:
            x = new_x
            break
        x = new_x
    return {hon.state_tokens(s): x[s] for s in range(n)}


def random_hon(seed, max_nodes=8, order=1):
    rng = random.Random(seed)
    n = rng.randint(2, max_nodes)
    seqs = []
    for _ in range(rng.randint(2, 40)):
        length = rng.randint(order, order + 5)
        seqs.append((tuple(f"n{rng.randrange(n)}" for _ in range(length)), rng.randint(1, 3)))
    return build_hon(PathCorpus.from_sequences(seqs), order)


def test_symmetric_two_cycle():
    hon = build_hon(parse_paths("a,b,a,b,a"), 1)
    for damping in (0.3, 0.85, 0.99):
        pr = hon_pagerank(hon, damping=damping)
        assert pr.scores[("a",)] == pytest.approx(0.5, abs=1e-12)
        assert pr.scores[("b",)] == pytest.approx(0.5, abs=1e-12)


def test_single_isolated_node():
    pr = hon_pagerank(build_hon(parse_paths("a"), 1))
    assert pr.scores == {("a",): 1.0}
    assert pr.converged


def test_three_node_example_matches_dense_oracle():
    hon = build_hon(parse_paths("a,b,c,a,c"), 1)
    pr = hon_pagerank(hon, damping=0.85, tol=1e-14)
    oracle = dense_pagerank_oracle(hon, 0.85)
    for state, score in pr.scores.items():
        assert score == pytest.approx(oracle[state], abs=1e-10)


def test_random_hons_match_dense_oracle():
    for seed in range(25):
        order = 1 + seed % 3
        hon = random_hon(seed, order=order)
        if hon.node_count == 0:
            continue
        pr = hon_pagerank(hon, damping=0.85, tol=1e-14)
        oracle = dense_pagerank_oracle(hon, 0.85)
        l1 = sum(abs(pr.scores[s] - oracle[s]) for s in pr.scores)
        assert l1 < 1e-10
        assert sum(pr.scores.values()) == pytest.approx(1.0, abs=1e-10)
        assert all(v >= 0 for v in pr.scores.values())


def dense_pagerank_from(hon, damping, x0, tol=1e-14):
    n = hon.node_count
    P = np.zeros((n, n))
    for j in range(hon.edge_count_total):
        P[int(hon.edge_from[j]), int(hon.edge_to[j])] = hon.edge_prob[j]
    dangling = P.sum(axis=1) == 0
    x = np.asarray(x0, dtype=float)
    for _ in range(200000):
        new_x = damping * (P.T @ x + x[dangling].sum() / n) + (1 - damping) / n
        if np.abs(new_x - x).sum() < tol:
            return new_x
        x = new_x
    return x


def test_initialization_invariance():
    # converged scores must not depend on the starting vector
    hon = random_hon(3, order=2)
    tol = 1e-13
    pr = hon_pagerank(hon, tol=tol)
    n = hon.node_count
    concentrated = np.zeros(n)
    concentrated[0] = 1.0
    alt = dense_pagerank_from(hon, 0.85, concentrated, tol=tol)
    for sid in range(n):
        assert pr.scores[hon.state_tokens(sid)] == pytest.approx(alt[sid], abs=10 * tol)


def test_nonconvergence_flag():
    # asymmetric graph, so uniform start is far from stationary
    hon = build_hon(parse_paths("a,b,c,a,c"), 1)
    pr = hon_pagerank(hon, tol=1e-15, max_iter=2)
    assert not pr.converged
    assert pr.iterations == 2


def test_aggregate_by_final_component():
    from honkit.ranking import ScoreVector

    agg = aggregate_pagerank(ScoreVector({("a", "b"): 0.6, ("c", "b"): 0.4}))
    assert agg.scores == {"b": pytest.approx(1.0)}
    agg = aggregate_pagerank(ScoreVector({("a", "b"): 0.5, ("b", "c"): 0.5}))
    assert agg.scores == {"b": 0.5, "c": 0.5}


def test_aggregate_identity_for_order_one():
    hon = build_hon(parse_paths("a,b,c,a,c"), 1)
    pr = hon_pagerank(hon)
    agg = aggregate_pagerank(pr)
    assert agg.scores == {s[-1]: v for s, v in pr.scores.items()}


def test_aggregate_preserves_mass():
    for seed in range(6):
        hon = random_hon(seed, order=2)
        if hon.node_count == 0:
            continue
        pr = hon_pagerank(hon)
        agg = aggregate_pagerank(pr)
        assert sum(agg.scores.values()) == pytest.approx(sum(pr.scores.values()), abs=1e-12)


def brute_force_tau_b(xs, ys):
    concordant = discordant = ties_x = ties_y = 0
    n = len(xs)
    for i, j in itertools.combinations(range(n), 2):
        dx = xs[i] - xs[j]
        dy = ys[i] - ys[j]
        if dx == 0 and dy == 0:
            ties_x += 1
            ties_y += 1
        elif dx == 0:
            ties_x += 1
        elif dy == 0:
            ties_y += 1
        elif dx * dy > 0:
            concordant += 1
        else:
            discordant += 1
    n0 = n * (n - 1) / 2
    denom = np.sqrt((n0 - ties_x) * (n0 - ties_y))
    return (concordant - discordant) / denom


def test_kendall_exact_endpoints():
    x = {f"k{i}": float(i) for i in range(10)}
    assert kendall_tau(x, x) == 1.0
    reverse = {f"k{i}": float(-i) for i in range(10)}
    assert kendall_tau(x, reverse) == -1.0


def test_kendall_small_example():
    x = {"a": 1, "b": 2, "c": 3, "d": 4}
    y = {"a": 1, "b": 3, "c": 2, "d": 4}
    assert kendall_tau(x, y) == pytest.approx(4 / 6)


def test_kendall_matches_brute_force_with_ties():
    rng = random.Random(13)
    for trial in range(20):
        n = rng.randint(3, 60)
        keys = [f"k{i}" for i in range(n)]
        xs = [rng.randint(0, 6) for _ in range(n)]
        ys = [rng.randint(0, 6) for _ in range(n)]
        if len(set(xs)) < 2 or len(set(ys)) < 2:
            continue
        x = dict(zip(keys, map(float, xs)))
        y = dict(zip(keys, map(float, ys)))
        assert kendall_tau(x, y) == pytest.approx(brute_force_tau_b(xs, ys), abs=1e-12)


def test_kendall_agrees_with_scipy_on_untied_floats():
    from scipy import stats as scipy_stats

    rng = random.Random(31)
    for _ in range(10):
        n = rng.randint(5, 80)
        keys = [f"k{i}" for i in range(n)]
        xs = [rng.random() for _ in range(n)]
        ys = [rng.random() for _ in range(n)]
        mine = kendall_tau(dict(zip(keys, xs)), dict(zip(keys, ys)))
        ref = scipy_stats.kendalltau(xs, ys).statistic
        assert mine == pytest.approx(float(ref), abs=1e-12)


def test_kendall_fully_tied_side_returns_zero():
    x = {"a": 1.0, "b": 1.0, "c": 1.0}
    y = {"a": 1.0, "b": 2.0, "c": 3.0}
    assert kendall_tau(x, y) == 0.0


def test_kendall_uses_key_intersection():
    x = {"a": 1.0, "b": 2.0, "zzz": 9.0}
    y = {"a": 2.0, "b": 1.0, "qqq": 3.0}
    assert kendall_tau(x, y) == -1.0
    with pytest.raises(ValueError):
        kendall_tau({"a": 1.0}, {"a": 1.0, "b": 2.0})


def test_alignment_positive_for_hub_corpus():
    # One hub dominates both visit counts and stationary mass.
    seqs = []
    for leaf in ("p", "q", "r", "s"):
        seqs.append((("hub", leaf, "hub"), 5))
    corpus = PathCorpus.from_sequences(seqs)
    result = pagerank_alignment(corpus, 1, 0.85)
    assert result[1]["tau"] > 0


def test_alignment_orders_and_convergence():
    corpus = parse_paths("a,b,c,d\nb,c,d,a\nc,d,a,b")
    result = pagerank_alignment(corpus, 3, 0.85)
    assert sorted(result) == [1, 2, 3]
    for k in result:
        assert result[k]["converged"]
        assert -1.0 <= result[k]["tau"] <= 1.0
