"""Sequence memory: 26 letter-rooted tries with per-sequence statistics.

Every sequence ever observed one letter past a valid sequence is stored
here, together with the counters the transition-probability and word-score
formulas consume.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import Iterator, TextIO

ALPHABET = "abcdefghijklmnopqrstuvwxyz"
HASH_BUCKETS = 12577

_F32 = struct.Struct("<f")


def f32(x: float) -> float:
    """Round a Python float to the nearest IEEE single-precision value."""
    return _F32.unpack(_F32.pack(x))[0]


class SequenceRecord:
    """One stored sequence, identified by its last letter and predecessor."""

    __slots__ = (
        "id",
        "event",
        "length",
        "prev",
        "create_count",
        "in_count",
        "out_count",
        "succ_count",
        "accum_scores",
        "children",
    )

    def __init__(self, id: int, event: str, prev: SequenceRecord | None,
                 create_count: int = 0) -> None:
        self.id = id
        self.event = event
        self.prev = prev
        self.length = 1 if prev is None else prev.length + 1
        self.create_count = create_count
        self.in_count = 0
        self.out_count = 0
        self.succ_count = 0
        self.accum_scores = 0.0
        self.children: dict[str, SequenceRecord] = {}

    @property
    def letters(self) -> str:
        out = []
        p: SequenceRecord | None = self
        while p is not None:
            out.append(p.event)
            p = p.prev
        return "".join(reversed(out))

    @property
    def is_root(self) -> bool:
        return self.prev is None

    def __repr__(self) -> str:
        return (f"SequenceRecord(id={self.id}, {self.letters!r}, "
                f"in={self.in_count}, out={self.out_count}, "
                f"succ={self.succ_count}, acc={self.accum_scores:.6g})")


@dataclass
class MemoryStats:
    alloc_count: int
    fire_count: int
    event_count: int


def _check_letter(event: str) -> None:
    if len(event) != 1 or not ("a" <= event <= "z"):
        raise ValueError(f"event must be a single letter a-z, got {event!r}")


def hash_index(prev: SequenceRecord, event: str) -> int:
    """ELF hash of (event, prev.event, prev.length, prev.id lo, prev.id hi).

    Only the low 16 bits of the id take part, little-endian, so the bucket
    layout matches a 16-bit allocation counter for runs under 65,536 records.
    """
    _check_letter(event)
    h = 0
    for b in (ord(event), ord(prev.event), prev.length & 0xFF,
              prev.id & 0xFF, (prev.id >> 8) & 0xFF):
        h = ((h << 4) + b) & 0xFFFFFFFF
        g = h & 0xF0000000
        if g:
            h ^= g >> 24
        h &= ~g & 0xFFFFFFFF
    return h % HASH_BUCKETS


class SequenceMemory:
    """Trie of all stored sequences plus the global event/alloc/fire counters.

    Children are found through a per-record dict keyed by letter; the ELF
    bucket function is kept for diagnostics (see :meth:`bucket_histogram`).
    """

    def __init__(self) -> None:
        self.alloc_count = 0
        self.fire_count = 0
        self.event_count = 0
        self.roots: list[SequenceRecord] = []
        for letter in ALPHABET:
            self.alloc_count += 1
            self.roots.append(SequenceRecord(self.alloc_count, letter, None))
        self._root_by_letter = {r.event: r for r in self.roots}

    def root(self, event: str) -> SequenceRecord:
        try:
            return self._root_by_letter[event]
        except KeyError:
            raise ValueError(
                f"event must be a single letter a-z, got {event!r}") from None

    def next_sequence(self, prev: SequenceRecord | None,
                      event: str) -> SequenceRecord:
        """Return ``prev + event``, creating it (counters zero) on a miss."""
        if prev is None:
            return self.root(event)
        child = prev.children.get(event)
        if child is None:
            _check_letter(event)
            self.alloc_count += 1
            child = SequenceRecord(self.alloc_count, event, prev,
                                   self.event_count)
            prev.children[event] = child
        return child

    def find(self, letters: str) -> SequenceRecord | None:
        """Look up a stored sequence by its letters without creating it."""
        if not letters:
            return None
        seq = self._root_by_letter.get(letters[0])
        for ch in letters[1:]:
            if seq is None:
                return None
            seq = seq.children.get(ch)
        return seq

    def stats(self) -> MemoryStats:
        return MemoryStats(self.alloc_count, self.fire_count, self.event_count)

    def __iter__(self) -> Iterator[SequenceRecord]:
        """Depth-first walk over every stored record, roots first."""
        stack = list(reversed(self.roots))
        while stack:
            rec = stack.pop()
            yield rec
            stack.extend(reversed(list(rec.children.values())))

    def __len__(self) -> int:
        return self.alloc_count

    def bucket_histogram(self) -> list[int]:
        counts = [0] * HASH_BUCKETS
        for rec in self:
            if rec.prev is not None:
                counts[hash_index(rec.prev, rec.event)] += 1
        return counts

    def check_invariants(self) -> list[str]:
        """Full scan for counter and trie violations; empty list when clean."""
        problems = []
        for rec in self:
            if rec.out_count > rec.in_count:
                problems.append(f"{rec.letters}: out_count > in_count")
            if rec.succ_count > rec.out_count:
                problems.append(f"{rec.letters}: succ_count > out_count")
            total = sum(c.out_count for c in rec.children.values())
            if rec.succ_count != total:
                problems.append(
                    f"{rec.letters}: succ_count {rec.succ_count} != {total}")
            if rec.prev is None and rec.out_count != rec.in_count:
                problems.append(f"{rec.letters}: root out_count != in_count")
            if rec.prev is not None and rec.length != rec.prev.length + 1:
                problems.append(f"{rec.letters}: bad length")
        return problems

    def dump(self, fh: TextIO) -> None:
        """Write one tab-separated line per record, ordered by id."""
        for rec in sorted(self, key=lambda r: r.id):
            fh.write(f"{rec.id}\t{rec.letters}\t{rec.create_count}\t"
                     f"{rec.in_count}\t{rec.out_count}\t{rec.succ_count}\t"
                     f"{rec.accum_scores!r}\n")


def passes_threshold(seq: SequenceRecord, event_count: int,
                     threshold_prob: float, bias: float) -> bool:
    """Frequency test for a non-root sequence, in single precision.

    ``threshold_prob`` and ``bias`` must already be single-precision values.
    A record created during the current event has a zero denominator and
    never passes.
    """
    den = event_count - seq.create_count
    if den == 0:
        return False
    prob = f32(f32(seq.in_count - bias) / den)
    return not prob < threshold_prob


def average_word_score(seq: SequenceRecord) -> float:
    return f32(seq.accum_scores / seq.in_count)
