import math
import random

import pytest

from honkit.corpus import PathCorpus, parse_paths
from honkit.errors import ZeroProbabilityError
from honkit.graph import first_order_graph
from honkit.hon import build_multi_order
from honkit.selection import (
    degrees_of_freedom,
    log_likelihood,
    lrt,
    optimal_order,
)
from honkit.synth import generate_corpus, random_planted_chain


def model_and_corpus(text, max_order, fmt="lines"):
    corpus = parse_paths(text, fmt)
    return build_multi_order(corpus, max_order), corpus


def test_loglik_deterministic_corpus_is_zero():
    model, corpus = model_and_corpus("a,b,c", 1)
    assert log_likelihood(model, corpus, 1) == pytest.approx(0.0, abs=1e-12)


def test_loglik_branching_example():
    model, corpus = model_and_corpus("a,b,c\na,b,d", 2)
    expect = 2 * math.log(0.5)
    assert log_likelihood(model, corpus, 1) == pytest.approx(expect, abs=1e-9)
    assert log_likelihood(model, corpus, 2) == pytest.approx(expect, abs=1e-9)


def test_loglik_brute_force_oracle():
    # Directly multiply start and conditional window frequencies.
    text = "a,b,c,2\na,b,d,1\nb,c,a,b,2\nc,1"
    model, corpus = model_and_corpus(text, 3, fmt="ngram")
    for k in (1, 2, 3):
        expect = 0.0
        starts: dict = {}
        total = 0
        for path, mult in corpus.iter_paths():
            starts[path[0]] = starts.get(path[0], 0) + mult
            total += mult
        for path, mult in corpus.iter_paths():
            ll = math.log(starts[path[0]] / total)
            for t in range(1, len(path)):
                c = min(k, t)
                window = path[t - c : t + 1]
                num = 0
                for q, qm in corpus.iter_paths():
                    for j in range(len(q) - c):
                        if q[j : j + c + 1] == window:
                            num += qm
                den = 0
                for q, qm in corpus.iter_paths():
                    for j in range(len(q) - c):
                        if q[j : j + c] == window[:-1]:
                            den += qm
                ll += math.log(num / den)
            expect += mult * ll
        assert log_likelihood(model, corpus, k) == pytest.approx(expect, abs=1e-9)


def test_loglik_brute_force_oracle_randomized():
    rng = random.Random(17)
    for trial in range(6):
        seqs = []
        for _ in range(rng.randint(2, 8)):
            length = rng.randint(1, 6)
            seqs.append((tuple(f"r{rng.randrange(4)}" for _ in range(length)), rng.randint(1, 3)))
        corpus = PathCorpus.from_sequences(seqs)
        model = build_multi_order(corpus, 3)
        for k in (1, 2, 3):
            starts: dict = {}
            total = 0
            for path, mult in corpus.iter_paths():
                starts[path[0]] = starts.get(path[0], 0) + mult
                total += mult
            expect = 0.0
            for path, mult in corpus.iter_paths():
                ll = math.log(starts[path[0]] / total)
                for t in range(1, len(path)):
                    c = min(k, t)
                    window = path[t - c : t + 1]
                    num = den = 0
                    for q, qm in corpus.iter_paths():
                        for j in range(len(q) - c):
                            if q[j : j + c] == window[:-1]:
                                den += qm
                                if q[j + c] == window[-1]:
                                    num += qm
                    ll += math.log(num / den)
                expect += mult * ll
            assert log_likelihood(model, corpus, k) == pytest.approx(expect, abs=1e-9)


def test_loglik_rejects_uncovered_corpus():
    model, _ = model_and_corpus("a,b,c", 1)
    other = parse_paths("a,b,z")
    with pytest.raises(ZeroProbabilityError):
        log_likelihood(model, other, 1)


def test_degrees_of_freedom_examples():
    g = first_order_graph(parse_paths("a,b"))
    assert degrees_of_freedom(g, 1) == 1
    cycle = first_order_graph(parse_paths("a,b,c,a"))
    assert degrees_of_freedom(cycle, 2) == 2
    nodes = ["x", "y", "z"]
    seqs = [((u, v), 1) for u in nodes for v in nodes if u != v]
    complete = first_order_graph(PathCorpus.from_sequences(seqs))
    assert degrees_of_freedom(complete, 1) == 5
    assert degrees_of_freedom(complete, 0) == 2


def test_lrt_no_improvement_gives_p_one():
    model, corpus = model_and_corpus("a,b,c\na,b,c", 2)
    result = lrt(model, corpus, 1)
    assert result.lam == 0.0
    assert result.p_value == 1.0


def test_lrt_statistic_and_dof_from_example_corpus():
    model, corpus = model_and_corpus("x,a,c\ny,a,d", 2)
    result = lrt(model, corpus, 1)
    # Order-2 distinguishes the two contexts of a; order-1 cannot.
    assert result.lam == pytest.approx(-2 * (2 * math.log(0.5)), abs=1e-9)
    assert result.delta_d >= 0
    assert 0.0 <= result.p_value <= 1.0


def test_nesting_monotonicity_random():
    rng = random.Random(0)
    for trial in range(12):
        seqs = []
        for _ in range(rng.randint(3, 40)):
            length = rng.randint(1, 9)
            path = tuple(f"n{rng.randrange(6)}" for _ in range(length))
            seqs.append((path, rng.randint(1, 3)))
        corpus = PathCorpus.from_sequences(seqs)
        model = build_multi_order(corpus, 5)
        values = [log_likelihood(model, corpus, k) for k in range(1, 6)]
        for lo, hi in zip(values, values[1:]):
            assert hi >= lo - 1e-9


def test_optimal_order_deterministic_corpus():
    model, corpus = model_and_corpus("a,b,c,d,a,b\na,b,c,d,a,b", 3)
    selection = optimal_order(model, corpus, 0.05, 3)
    assert selection.optimal_order == 1
    assert selection.trace[0].p_value == 1.0
    assert not selection.truncated


def test_optimal_order_recovers_planted_order_two():
    chain = random_planted_chain(10, 2, 3, 0.9, 42)
    corpus = generate_corpus(chain, 10_000, 8, 15, 43)
    model = build_multi_order(corpus, 4)
    selection = optimal_order(model, corpus, 0.05, 4)
    assert selection.optimal_order == 2
    # trace shape: significant up to the accepted order, then one failure
    for entry in selection.trace[:-1]:
        assert entry.p_value < selection.epsilon
    assert selection.trace[-1].p_value >= selection.epsilon


def test_optimal_order_deterministic_trace():
    chain = random_planted_chain(8, 2, 2, 0.8, 5)
    corpus = generate_corpus(chain, 2000, 6, 10, 6)
    model = build_multi_order(corpus, 3)
    a = optimal_order(model, corpus, 0.05, 3)
    b = optimal_order(model, corpus, 0.05, 3)
    assert a == b


def test_optimal_order_truncation_flag():
    chain = random_planted_chain(10, 3, 3, 0.95, 9)
    corpus = generate_corpus(chain, 8000, 8, 14, 10)
    model = build_multi_order(corpus, 3)
    selection = optimal_order(model, corpus, 0.05, 3)
    # True order exceeds the strongest testable order, so the search truncates.
    assert selection.optimal_order == 3
    assert selection.truncated


def test_optimal_order_validates_arguments():
    model, corpus = model_and_corpus("a,b\nb,c", 2)
    with pytest.raises(ValueError):
        optimal_order(model, corpus, 0.0, 2)
    with pytest.raises(ValueError):
        optimal_order(model, corpus, 0.05, 3)


def test_optimal_order_on_transitionless_high_layers():
    # two-node paths cannot support order-2 contexts; the search stops at 1
    model, corpus = model_and_corpus("a,b\nb,c\nc,a\na,b", 4)
    selection = optimal_order(model, corpus, 0.05, 4)
    assert selection.optimal_order == 1
    assert selection.trace[0].lam == 0.0


def test_lambda_nonnegative_and_dof_nonnegative():
    rng = random.Random(2)
    for trial in range(8):
        seqs = []
        for _ in range(rng.randint(5, 30)):
            length = rng.randint(2, 8)
            path = tuple(f"m{rng.randrange(5)}" for _ in range(length))
            seqs.append((path, 1))
        corpus = PathCorpus.from_sequences(seqs)
        model = build_multi_order(corpus, 4)
        for k in (1, 2, 3):
            result = lrt(model, corpus, k)
            assert result.lam >= 0.0
            assert result.delta_d >= 0
            assert 0.0 <= result.p_value <= 1.0
