"""The event window: a ring of columns forming a sawtooth Viterbi trellis.

Column ``k`` (counting from the window's left edge, starting at 1) holds at
most ``k`` cells; cell ``i`` references the stored sequence made of the last
``i + 1`` letters, and carries the first-level score of the best path that
ends in it. All score arithmetic is rounded to single precision after every
operation so runs are reproducible bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .config import EngineConfig
from .memory import SequenceMemory, SequenceRecord, f32

WORD = "word"
FORCED_CHAR = "forced_char"
OVERFLOW = "overflow_marker"
BATCH_END = "batch_end"


@dataclass(frozen=True)
class Emission:
    kind: str
    letters: str = ""


class ColumnOverflowError(RuntimeError):
    """A valid suffix chain grew as long as the window capacity."""


class Cell(NamedTuple):
    seq: SequenceRecord
    score: float


class Column:
    __slots__ = ("event", "seqs", "scores", "best_length", "best_score")

    def __init__(self) -> None:
        self.event = ""
        self.seqs: list[SequenceRecord] = []
        self.scores: list[float] = []
        self.best_length = 0
        self.best_score = 0.0

    @property
    def num_cells(self) -> int:
        return len(self.seqs)

    @property
    def cells(self) -> list[Cell]:
        return [Cell(s, v) for s, v in zip(self.seqs, self.scores)]

    def truncate(self, n: int) -> None:
        del self.seqs[n:]
        del self.scores[n:]


class EventWindow:
    """Fixed ring of ``capacity`` columns; ``head`` is the newest one."""

    def __init__(self, capacity: int = 32, min_columns: int = 16) -> None:
        self.capacity = capacity
        self.min_columns = min_columns
        self.columns = [Column() for _ in range(capacity)]
        self.head: int | None = None
        self.num_columns = 0

    def reset(self) -> None:
        self.head = None
        self.num_columns = 0

    def column_at(self, offset: int) -> Column:
        """Column ``offset`` steps left of the head (0 is the head)."""
        assert self.head is not None
        return self.columns[(self.head - offset) % self.capacity]

    @property
    def head_column(self) -> Column:
        return self.column_at(0)

    def in_window(self) -> list[Column]:
        """Logical columns, oldest first."""
        return [self.column_at(k) for k in range(self.num_columns - 1, -1, -1)]

    def letters(self) -> str:
        return "".join(c.seqs[0].event for c in self.in_window())


def append_column(window: EventWindow, event: str, memory: SequenceMemory,
                  cfg: EngineConfig) -> Column:
    """Advance the ring and fill the new head with valid suffix sequences.

    Statistics are updated for every suffix the previous column could
    extend, including the ones past the first threshold failure, since a few
    of those junk candidates later become valid.
    """
    memory.event_count += 1
    event_count = memory.event_count
    root = memory.root(event)
    root.in_count += 1
    root.out_count += 1

    if window.head is None:
        window.head = 0
        window.num_columns = 1
        prev_seqs: list[SequenceRecord] = []
    else:
        prev_seqs = window.columns[window.head].seqs
        window.head = (window.head + 1) % window.capacity

    col = window.columns[window.head]
    col.event = event
    seqs = [root]
    col.seqs = seqs
    col.scores = [0.0]

    threshold = cfg.threshold_f32
    bias = cfg.bias_f32
    n = len(prev_seqs)
    ix = 0
    while ix < n:
        in_seq = prev_seqs[ix]
        out_seq = in_seq.children.get(event)
        if out_seq is None:
            out_seq = memory.next_sequence(in_seq, event)
        out_seq.in_count += 1
        den = event_count - out_seq.create_count
        if den == 0 or f32(f32(out_seq.in_count - bias) / den) < threshold:
            break
        if not out_seq.out_count:
            memory.fire_count += 1
        out_seq.out_count += 1
        in_seq.succ_count += 1
        seqs.append(out_seq)
        ix += 1
        if len(seqs) >= window.capacity:
            raise ColumnOverflowError(
                f"suffix chain reached window capacity {window.capacity}")
    col.scores.extend([0.0] * (len(seqs) - 1))

    for jx in range(ix + 1, n):
        in_seq = prev_seqs[jx]
        out_seq = in_seq.children.get(event)
        if out_seq is None:
            out_seq = memory.next_sequence(in_seq, event)
        out_seq.in_count += 1
    return col


def score_first_level(window: EventWindow, memory: SequenceMemory) -> bool:
    """Viterbi step from the previous column into the head column.

    Same-word paths extend cell ``i`` to cell ``i + 1``; every previous cell
    also competes, through a new-word transition, for cell 0, and the
    winner's length is written to the previous column's ``best_length``.
    The column is then normalized and cell 0's score is credited to the
    winning sequence's accumulated word score.

    Returns False when no same-word path carried any score, in which case
    cell 0 is simply set to 1.
    """
    prev = window.column_at(1)
    new = window.head_column
    in_seqs = prev.seqs
    in_scores = prev.scores
    out_seqs = new.seqs
    out_scores = new.scores
    n_out = len(out_seqs)
    frac = f32(out_seqs[0].in_count / memory.event_count)
    total = 0.0

    for ix in range(len(in_seqs)):
        in_seq = in_seqs[ix]
        score = in_scores[ix]
        out_count = in_seq.out_count
        p_new = f32(f32(frac * (out_count - in_seq.succ_count)) / out_count)
        if ix + 1 < n_out:
            p_same = f32(f32(out_seqs[ix + 1].out_count / out_count) - p_new)
            v = f32(score * p_same)
            out_scores[ix + 1] = v
            total = f32(total + v)
        score = f32(score * p_new)
        if not ix or out_scores[0] < score:
            out_scores[0] = score
            prev.best_length = ix + 1

    normalized = total != 0.0
    if normalized:
        total = f32(total + out_scores[0])
        for jx in range(n_out):
            out_scores[jx] = f32(out_scores[jx] / total)
    else:
        out_scores[0] = 1.0

    survivor = in_seqs[prev.best_length - 1]
    survivor.accum_scores = f32(survivor.accum_scores + out_scores[0])
    return normalized


def _pow_float(x: float, n: int) -> float:
    # integer power by repeated squaring, single precision throughout
    z = 1.0
    while True:
        if n & 1:
            z = f32(z * x)
        n >>= 1
        if not n:
            return z
        x = f32(x * x)


def score_second_level(window: EventWindow, pow_mode: str = "float") -> None:
    """Left-to-right DP over the window, excluding the head column.

    A word of length ``L`` made of sequence ``W`` scores
    ``average_word_score(W) ** L``; ties keep the shorter word.
    """
    cap = window.capacity
    nc = window.num_columns
    columns = window.columns
    prev_idx = (window.head - nc) % cap
    columns[prev_idx].best_score = 1.0
    col_idx = (prev_idx + 1) % cap
    if columns[col_idx].num_cells != 1:
        raise RuntimeError("window left edge is not aligned to a boundary")
    use_float = pow_mode == "float"

    for _ in range(1, nc):
        col = columns[col_idx]
        back = prev_idx
        for jx, seq in enumerate(col.seqs):
            p_word = f32(seq.accum_scores / seq.in_count)
            if use_float:
                score = f32(columns[back].best_score * _pow_float(p_word, jx + 1))
            else:
                score = f32(columns[back].best_score * math.pow(p_word, jx + 1))
            if not jx or col.best_score < score:
                col.best_score = score
                col.best_length = jx + 1
            back = (back - 1) % cap
        prev_idx = col_idx
        col_idx = (col_idx + 1) % cap


def detach_words(window: EventWindow) -> list[Emission]:
    """Emit committed words from the left edge, then realign that edge.

    Words whose right end lies more than ``min_columns // 2`` columns behind
    the head are committed. A full window with nothing committed forces its
    oldest letter out instead.
    """
    cap = window.capacity
    nc = window.num_columns
    stack: list[SequenceRecord] = []
    offset = 1
    while offset < nc:
        col = window.column_at(offset)
        length = col.best_length
        if offset > window.min_columns // 2:
            stack.append(col.seqs[length - 1])
        offset += length

    out: list[Emission] = []
    kind = WORD
    if not stack:
        if nc != cap:
            return out
        kind = FORCED_CHAR
        stack.append(window.columns[(window.head + 1) % cap].seqs[0])

    for seq in reversed(stack):
        nc -= seq.length
        out.append(Emission(kind, seq.letters))
    out.append(Emission(BATCH_END))
    window.num_columns = nc

    idx = (window.head - nc + 1) % cap
    length = 1
    while length <= nc:
        col = window.columns[idx]
        if col.num_cells <= length:
            break
        col.truncate(length)
        if col.best_length > length:
            col.best_length = length
        length += 1
        idx = (idx + 1) % cap
    return out


def trace_line(col: Column) -> str:
    """One-line dump of a column: letter, then ``length:score`` per cell."""
    cells = " ".join(f"{s.length}:{v:.6g}" for s, v in zip(col.seqs, col.scores))
    return f"{col.event}\t{cells}"
