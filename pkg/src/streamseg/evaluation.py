"""Boundary-level scoring of a predicted segmentation against gold."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Sequence

MERGE = "merge"
SPLIT = "split"
MIXED = "mixed"


@dataclass(frozen=True)
class Segmentation:
    """A letter stream plus its internal boundary offsets."""

    letters: str
    boundaries: frozenset[int]

    def __post_init__(self) -> None:
        n = len(self.letters)
        bad = [b for b in self.boundaries if not 0 < b < n]
        if bad:
            raise ValueError(f"boundaries outside (0, {n}): {sorted(bad)}")

    @classmethod
    def from_words(cls, words: Sequence[str]) -> Segmentation:
        return cls("".join(words), frozenset(_offsets(words)))

    @classmethod
    def from_text(cls, text: str) -> Segmentation:
        return cls.from_words(text.split())

    def words(self) -> list[str]:
        cuts = [0, *sorted(self.boundaries), len(self.letters)]
        return [self.letters[a:b] for a, b in zip(cuts, cuts[1:]) if b > a]


@dataclass
class SegmentError:
    start: int
    end: int
    kind: str
    pred: list[str]
    gold: list[str]


@dataclass
class EvalReport:
    precision: float
    recall: float
    f1: float
    word_accuracy: float
    n_pred: int
    n_gold: int
    n_correct: int
    errors: list[SegmentError] = field(default_factory=list)

    @property
    def missing(self) -> int:
        return self.n_gold - self.n_correct

    @property
    def extra(self) -> int:
        return self.n_pred - self.n_correct

    @property
    def boundary_errors(self) -> int:
        return self.missing + self.extra

    def to_text(self) -> str:
        lines = [
            f"precision: {self.precision:.6f}",
            f"recall: {self.recall:.6f}",
            f"f1: {self.f1:.6f}",
            f"word_accuracy: {self.word_accuracy:.6f}",
            f"predicted_boundaries: {self.n_pred}",
            f"gold_boundaries: {self.n_gold}",
            f"missing_boundaries: {self.missing}",
            f"extra_boundaries: {self.extra}",
            f"errors: {len(self.errors)}",
        ]
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        d = asdict(self)
        d["missing"] = self.missing
        d["extra"] = self.extra
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def compare(pred: Segmentation, gold: Segmentation) -> EvalReport:
    """Precision/recall/F1 over internal boundaries plus an error list.

    An empty predicted set has precision 1.0 and an empty gold set has
    recall 1.0. Errors are the maximal spans between boundaries both sides
    agree on, inside which the two sides disagree.
    """
    if pred.letters != gold.letters:
        raise ValueError("predicted and gold segmentations cover different "
                         "letter streams")
    p, g = pred.boundaries, gold.boundaries
    hit = len(p & g)
    precision = hit / len(p) if p else 1.0
    recall = hit / len(g) if g else 1.0
    f1 = (2 * precision * recall / (precision + recall)
          if precision + recall else 0.0)

    n = len(gold.letters)
    agreed = [0, *sorted(p & g), n]
    errors = []
    good_words = 0
    for a, b in zip(agreed, agreed[1:]):
        p_in = sorted(x for x in p if a < x < b)
        g_in = sorted(x for x in g if a < x < b)
        if p_in == g_in:
            # no internal boundary on either side: one gold word, matched
            good_words += 1
            continue
        kind = MERGE if not p_in else SPLIT if not g_in else MIXED
        errors.append(SegmentError(a, b, kind, _cut(pred.letters, a, b, p_in),
                                   _cut(gold.letters, a, b, g_in)))
    n_gold_words = len(g) + 1 if n else 0
    word_accuracy = good_words / n_gold_words if n_gold_words else 1.0
    return EvalReport(precision, recall, f1, word_accuracy,
                      len(p), len(g), hit, errors)


def _offsets(words: Sequence[str]) -> set[int]:
    out = set()
    pos = 0
    for w in words[:-1]:
        pos += len(w)
        out.add(pos)
    return out


def _cut(letters: str, a: int, b: int, cuts: list[int]) -> list[str]:
    pts = [a, *cuts, b]
    return [letters[x:y] for x, y in zip(pts, pts[1:])]


def format_error(err: SegmentError) -> str:
    """Three fixed-width lines: gold and predicted spans, then carets under
    each gap where the two disagree."""
    def row(words: list[str]) -> str:
        text = "".join(words)
        cuts = _offsets(words)
        return "".join(ch + ("|" if i + 1 in cuts else " ")
                       for i, ch in enumerate(text))

    g_row, p_row = row(err.gold), row(err.pred)
    marks = "".join("^" if a != b else " " for a, b in zip(g_row, p_row))
    g_row, p_row, marks = g_row.rstrip(), p_row.rstrip(), marks.rstrip()
    head = f"{err.kind} [{err.start}, {err.end})"
    return f"{head}\n  gold  {g_row}\n  pred  {p_row}\n        {marks}\n"


def format_errors(errors: list[SegmentError]) -> str:
    return "".join(format_error(e) for e in errors)
