import numpy as np
import pytest

from honkit.corpus import PathCorpus, parse_paths, path_stats, split_corpus, visit_counts
from honkit.errors import EmptyCorpusError, ParseError


def test_parse_lines_basic():
    corpus = parse_paths("a,b,c\na,b,d")
    assert corpus.n_instances == 2
    assert dict(corpus.iter_paths()) == {("a", "b", "c"): 1, ("a", "b", "d"): 1}
    assert corpus.universe == {"a", "b", "c", "d"}


def test_parse_ngram_multiplicity():
    corpus = parse_paths("a,b,2", fmt="ngram")
    assert dict(corpus.iter_paths()) == {("a", "b"): 2}
    assert corpus.n_instances == 2


def test_parse_comments_and_blanks_ignored():
    corpus = parse_paths("# header\n\na,b\n  \n#x\nb,c\n")
    assert corpus.n_instances == 2


def test_parse_empty_token_fails_with_line_number():
    with pytest.raises(ParseError) as exc:
        parse_paths("a,,b")
    assert exc.value.lineno == 1


def test_parse_whitespace_token_fails():
    with pytest.raises(ParseError):
        parse_paths("a, b\n")


def test_parse_bad_multiplicity():
    with pytest.raises(ParseError) as exc:
        parse_paths("a,b,1\na,b,x", fmt="ngram")
    assert exc.value.lineno == 2
    with pytest.raises(ParseError):
        parse_paths("a,b,0", fmt="ngram")


def test_parse_empty_input():
    with pytest.raises(EmptyCorpusError):
        parse_paths("# nothing here\n\n")


def test_parse_unknown_format():
    with pytest.raises(ValueError):
        parse_paths("a,b", fmt="tsv")


def test_duplicate_paths_aggregate():
    corpus = parse_paths("a,b\na,b\na,b,c")
    assert corpus.n_distinct == 2
    assert dict(corpus.iter_paths())[("a", "b")] == 2


def test_single_node_paths_are_legal():
    corpus = parse_paths("a\nb,c")
    assert corpus.n_instances == 2
    assert visit_counts(corpus) == {"a": 1, "b": 1, "c": 1}


def test_unicode_and_punctuated_tokens():
    corpus = parse_paths("駅-1,駅-2\nnode.7,node:8")
    assert corpus.universe == {"駅-1", "駅-2", "node.7", "node:8"}
    again = parse_paths("\n".join(corpus.to_ngram_lines()), fmt="ngram")
    assert again == corpus


def test_ngram_roundtrip():
    corpus = parse_paths("a,b,c\na,b,c\nx,y\nq")
    again = parse_paths("\n".join(corpus.to_ngram_lines()), fmt="ngram")
    assert again == corpus


def test_roundtrip_randomized():
    rng = np.random.default_rng(7)
    for trial in range(20):
        n_nodes = int(rng.integers(2, 15))
        tokens = [f"v{i}" for i in range(n_nodes)]
        seqs = []
        for _ in range(int(rng.integers(1, 30))):
            length = int(rng.integers(1, 8))
            path = tuple(tokens[int(rng.integers(0, n_nodes))] for _ in range(length))
            seqs.append((path, int(rng.integers(1, 4))))
        corpus = PathCorpus.from_sequences(seqs)
        assert parse_paths("\n".join(corpus.to_ngram_lines()), fmt="ngram") == corpus
        assert parse_paths("\n".join(corpus.to_lines())) == corpus


def test_path_stats_trivial():
    stats = path_stats(parse_paths("a,b,c"))
    assert stats.path_count == 1
    assert stats.length_histogram == {3: 1}
    assert stats.mean_length == 3.0
    assert stats.mean_transitions == 2.0


def test_path_stats_weighted_mean():
    corpus = parse_paths("a,b,2\na,b,c,d,2", fmt="ngram")
    stats = path_stats(corpus)
    assert stats.path_count == 4
    assert stats.mean_length == pytest.approx(3.0)
    assert stats.length_histogram == {2: 2, 4: 2}


def test_visit_counts_repeats_and_multiplicity():
    assert visit_counts(parse_paths("a,b,a")) == {"a": 2, "b": 1}
    assert visit_counts(parse_paths("a,b,3", fmt="ngram")) == {"a": 3, "b": 3}
    assert visit_counts(parse_paths("a,b,c,2\nb,c,1", fmt="ngram")) == {"a": 2, "b": 3, "c": 3}


def test_visit_counts_total_identity():
    rng = np.random.default_rng(3)
    for _ in range(10):
        seqs = []
        for _ in range(int(rng.integers(1, 20))):
            length = int(rng.integers(1, 6))
            path = tuple(f"n{int(rng.integers(0, 9))}" for _ in range(length))
            seqs.append((path, int(rng.integers(1, 5))))
        corpus = PathCorpus.from_sequences(seqs)
        total = sum(visit_counts(corpus).values())
        expect = sum(len(p) * m for p, m in corpus.iter_paths())
        assert total == expect


def test_split_partitions_for_all_seeds():
    corpus = parse_paths("a,b,5\nb,c,3\nc,d,a,2", fmt="ngram")
    for seed in range(25):
        train, test = split_corpus(corpus, 0.4, seed)
        merged = {}
        for part in (train, test):
            for path, mult in part.iter_paths():
                merged[path] = merged.get(path, 0) + mult
        assert merged == dict(corpus.iter_paths())
        assert train.n_instances + test.n_instances == corpus.n_instances


def test_split_deterministic():
    corpus = parse_paths("\n".join(f"a,b,n{i}" for i in range(50)))
    a = split_corpus(corpus, 0.3, 11)
    b = split_corpus(corpus, 0.3, 11)
    assert a[0] == b[0] and a[1] == b[1]


def test_split_binomial_concentration():
    corpus = PathCorpus.from_sequences([((f"x{i}", f"y{i}"), 1) for i in range(1000)])
    sizes = [split_corpus(corpus, 0.2, seed)[1].n_instances for seed in range(20)]
    assert 150 <= np.mean(sizes) <= 250


def test_split_bad_fraction():
    corpus = parse_paths("a,b\nc,d")
    for frac in (0.0, 1.0, -0.2, 1.5):
        with pytest.raises(ValueError):
            split_corpus(corpus, frac, 0)


def test_split_needs_two_instances():
    with pytest.raises(ValueError):
        split_corpus(parse_paths("a,b"), 0.5, 0)
