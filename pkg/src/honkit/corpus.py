"""Path corpora: parsing, interning, summary statistics, and splitting.

A corpus is a multiset of node-ID sequences ("paths") with positive integer
multiplicities. Node tokens are interned to dense integer indices once, at
construction; everything downstream works on the interned arrays and renders
original tokens only at the edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .errors import EmptyCorpusError, ParseError


def _valid_token(token: str) -> bool:
    if not token:
        return False
    return not any(c.isspace() or c == "," for c in token)


class PathCorpus:
    """Immutable multiset of paths over an interned node universe.

    Instances are safe to share across threads once constructed. Identical
    paths are aggregated: the multiplicity of a distinct path is the sum of
    the multiplicities it was supplied with, and distinct paths keep their
    first-seen order (which makes seeded splits reproducible).
    """

    def __init__(self, paths: list[tuple[int, ...]], mults: list[int], tokens: list[str]):
        self._paths = paths
        self.mults = np.asarray(mults, dtype=np.int64)
        self.tokens = tokens
        self.index = {tok: i for i, tok in enumerate(tokens)}
        lengths = np.fromiter((len(p) for p in paths), dtype=np.int64, count=len(paths))
        self.offsets = np.zeros(len(paths) + 1, dtype=np.int64)
        np.cumsum(lengths, out=self.offsets[1:])
        self.flat = np.fromiter(
            (v for p in paths for v in p), dtype=np.int64, count=int(self.offsets[-1])
        )

    @classmethod
    def from_sequences(
        cls, sequences: Iterable[tuple[Iterable[str], int]] | Iterable[Iterable[str]]
    ) -> "PathCorpus":
        """Build a corpus from (token sequence, multiplicity) pairs.

        Bare token sequences are accepted too and get multiplicity 1.
        """
        tokens: list[str] = []
        index: dict[str, int] = {}
        agg: dict[tuple[int, ...], int] = {}
        for item in sequences:
            if (
                isinstance(item, tuple)
                and len(item) == 2
                and isinstance(item[1], (int, np.integer))
            ):
                seq, mult = item
            else:
                seq, mult = item, 1
            mult = int(mult)
            if mult < 1:
                raise ValueError(f"multiplicity must be >= 1, got {mult}")
            path = []
            for tok in seq:
                if not _valid_token(tok):
                    raise ValueError(f"invalid node token {tok!r}")
                idx = index.get(tok)
                if idx is None:
                    idx = len(tokens)
                    index[tok] = idx
                    tokens.append(tok)
                path.append(idx)
            if not path:
                raise ValueError("paths must contain at least one node")
            key = tuple(path)
            agg[key] = agg.get(key, 0) + mult
        paths = list(agg.keys())
        mults = [agg[p] for p in paths]
        return cls(paths, mults, tokens)

    # -- basic views ---------------------------------------------------------

    @property
    def n_distinct(self) -> int:
        return len(self._paths)

    @property
    def n_instances(self) -> int:
        """Total path count, multiplicities included."""
        return int(self.mults.sum()) if len(self._paths) else 0

    @property
    def n_nodes(self) -> int:
        return len(self.tokens)

    @property
    def universe(self) -> set[str]:
        return set(self.tokens)

    def path_nodes(self, i: int) -> tuple[int, ...]:
        return self._paths[i]

    def path_tokens(self, i: int) -> tuple[str, ...]:
        return tuple(self.tokens[v] for v in self._paths[i])

    def iter_paths(self) -> Iterator[tuple[tuple[str, ...], int]]:
        for i in range(len(self._paths)):
            yield self.path_tokens(i), int(self.mults[i])

    def __len__(self) -> int:
        return self.n_distinct

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PathCorpus):
            return NotImplemented
        mine = {self.path_tokens(i): int(self.mults[i]) for i in range(len(self._paths))}
        theirs = {other.path_tokens(i): int(other.mults[i]) for i in range(len(other._paths))}
        return mine == theirs and self.universe == other.universe

    def __repr__(self) -> str:
        return (
            f"PathCorpus({self.n_distinct} distinct paths, "
            f"{self.n_instances} instances, {self.n_nodes} nodes)"
        )

    # -- serialization -------------------------------------------------------

    def to_ngram_lines(self) -> Iterator[str]:
        """Render in `ngram` format: tokens, then the multiplicity field."""
        for i in range(len(self._paths)):
            yield ",".join(self.path_tokens(i)) + f",{int(self.mults[i])}"

    def to_lines(self) -> Iterator[str]:
        """Render in `lines` format; each instance becomes its own line."""
        for i in range(len(self._paths)):
            line = ",".join(self.path_tokens(i))
            for _ in range(int(self.mults[i])):
                yield line


def parse_paths(source, fmt: str = "lines") -> PathCorpus:
    """Parse a path file into a corpus.

    `source` is a string or an iterable of lines (e.g. an open text file).
    Two line-oriented formats exist:

    * ``lines`` -- one path per line, comma-separated node tokens.
    * ``ngram`` -- same, but the last field is an integer multiplicity >= 1.

    Blank lines and lines starting with ``#`` are ignored. Raises ParseError
    with the offending line number on malformed input and EmptyCorpusError
    when nothing survives filtering.
    """
    if fmt not in ("lines", "ngram"):
        raise ValueError(f"unknown format {fmt!r}")
    if isinstance(source, str):
        lines = source.splitlines()
    else:
        lines = source

    sequences: list[tuple[list[str], int]] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split(",")
        if fmt == "ngram":
            if len(fields) < 2:
                raise ParseError("ngram lines need at least one node and a multiplicity", lineno)
            *fields, mult_field = fields
            try:
                mult = int(mult_field)
            except ValueError:
                raise ParseError(f"multiplicity {mult_field!r} is not an integer", lineno) from None
            if mult < 1:
                raise ParseError(f"multiplicity must be >= 1, got {mult}", lineno)
        else:
            mult = 1
        for tok in fields:
            if not _valid_token(tok):
                raise ParseError(f"invalid node token {tok!r}", lineno)
        sequences.append((fields, mult))

    if not sequences:
        raise EmptyCorpusError("no paths found in input")
    return PathCorpus.from_sequences(sequences)


@dataclass(frozen=True)
class PathStats:
    path_count: int
    length_histogram: dict[int, int]
    mean_length: float
    mean_transitions: float


def path_stats(corpus: PathCorpus) -> PathStats:
    """Multiplicity-weighted path-length distribution and its means."""
    if corpus.n_distinct == 0:
        raise EmptyCorpusError("cannot summarize an empty corpus")
    hist: dict[int, int] = {}
    total_nodes = 0
    for i in range(corpus.n_distinct):
        length = len(corpus.path_nodes(i))
        mult = int(corpus.mults[i])
        hist[length] = hist.get(length, 0) + mult
        total_nodes += length * mult
    count = corpus.n_instances
    mean_length = total_nodes / count
    return PathStats(count, dict(sorted(hist.items())), mean_length, mean_length - 1.0)


def visit_counts(corpus: PathCorpus) -> dict[str, int]:
    """Occurrences of each node across all paths, multiplicity-weighted."""
    if corpus.n_distinct == 0:
        raise EmptyCorpusError("cannot count visits in an empty corpus")
    lengths = np.diff(corpus.offsets)
    weights = np.repeat(corpus.mults, lengths)
    counts = np.bincount(corpus.flat, weights=weights, minlength=corpus.n_nodes)
    return {tok: int(counts[i]) for i, tok in enumerate(corpus.tokens)}


def split_corpus(
    corpus: PathCorpus, test_fraction: float, seed: int
) -> tuple[PathCorpus, PathCorpus]:
    """Randomly split path instances into train and test corpora.

    Every instance (multiplicity counted separately) lands in the test side
    with probability `test_fraction`, drawn from a generator seeded with
    `seed`; the multiset union of the two sides equals the input. Either side
    may come out empty on small corpora.
    """
    if not 0.0 < test_fraction < 1.0:
        raise ValueError(f"test_fraction must be in (0, 1), got {test_fraction}")
    if corpus.n_instances < 2:
        raise ValueError("need at least 2 path instances to split")
    rng = np.random.default_rng(seed)
    train_seqs = []
    test_seqs = []
    for i in range(corpus.n_distinct):
        mult = int(corpus.mults[i])
        n_test = int(rng.binomial(mult, test_fraction))
        toks = corpus.path_tokens(i)
        if mult - n_test > 0:
            train_seqs.append((toks, mult - n_test))
        if n_test > 0:
            test_seqs.append((toks, n_test))
    empty = PathCorpus([], [], [])
    train = PathCorpus.from_sequences(train_seqs) if train_seqs else empty
    test = PathCorpus.from_sequences(test_seqs) if test_seqs else empty
    return train, test
