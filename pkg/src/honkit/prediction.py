"""Next-node prediction and top-1 accuracy across memory orders."""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .corpus import PathCorpus
from .hon import MultiOrderModel


@dataclass(frozen=True)
class PredictionOutcome:
    history: tuple[str, ...]
    predicted: str | None
    actual: str
    used_order: int
    correct: bool


def predict_next(
    model: MultiOrderModel, history: tuple[str, ...], k: int
) -> tuple[str | None, int]:
    """Most probable continuation of a history, with back-off.

    Tries the trailing context of length min(k, len(history)) first and backs
    off one node at a time until some context has observed continuations.
    Ties go to the lexicographically smallest token; (None, 0) means even the
    single-node context is unseen.
    """
    if not history:
        raise ValueError("history must be non-empty")
    if not 1 <= k <= model.max_order:
        raise ValueError(f"order {k} outside model range 1..{model.max_order}")
    for c in range(min(k, len(history)), 0, -1):
        layer = model.layers[c]
        sid = layer.state_id(tuple(history[-c:]))
        if sid < 0:
            continue
        best = int(layer.best_next()[sid])
        if best >= 0:
            return model.tokens[best], c
    return None, 0


def prediction_accuracy(model: MultiOrderModel, eval_corpus: PathCorpus, k: int) -> float:
    """Fraction of transitions whose next node the model predicts correctly.

    Every transition position of every eval path is scored with the path
    prefix as history, multiplicity-weighted; missing predictions count as
    incorrect.
    """
    correct, total, _ = prediction_counts(model, eval_corpus, k)
    return correct / total


def prediction_counts(
    model: MultiOrderModel, eval_corpus: PathCorpus, k: int
) -> tuple[int, int, int]:
    """(correct, evaluated, none) transition counts, multiplicity-weighted."""
    if not 1 <= k <= model.max_order:
        raise ValueError(f"order {k} outside model range 1..{model.max_order}")
    n_transitions = int(
        ((eval_corpus.offsets[1:] - eval_corpus.offsets[:-1] - 1) * eval_corpus.mults).sum()
    ) if eval_corpus.n_distinct else 0
    if n_transitions == 0:
        raise ValueError("evaluation corpus contains no transitions")
    if eval_corpus.tokens == model.tokens:
        flat = eval_corpus.flat
    else:
        flat = model.map_corpus(eval_corpus)
    interns = [None] + [model.layers[c].intern for c in range(1, k + 1)]
    best = [None] + [model.layers[c].best_next() for c in range(1, k + 1)]
    correct, total, nones = kernels.prediction_eval(
        flat, eval_corpus.offsets, eval_corpus.mults, k, len(model.tokens), interns, best
    )
    return int(correct), int(total), int(nones)
