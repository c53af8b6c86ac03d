"""Segmentation sessions: the per-letter cycle, learning/output modes, flush.

A session owns its memory and window; nothing is shared between sessions,
so separate sessions may run on separate threads.

Note that :meth:`Session.flush` pushes one sentinel letter through the
engine. That letter updates the statistics like any other event and stays
in the window; this keeps output identical to the reference behavior.
"""

from __future__ import annotations

from typing import Callable, Iterable

from .config import EngineConfig
from .memory import MemoryStats, SequenceMemory, average_word_score
from .trellis import (BATCH_END, FORCED_CHAR, OVERFLOW, WORD, Emission,
                      EventWindow, append_column, detach_words,
                      score_first_level, score_second_level, trace_line)

__all__ = ["Session", "Emission", "EngineConfig", "render", "render_stats",
           "words_of", "LEARNING", "OUTPUT"]

LEARNING = "learning"
OUTPUT = "output"


class Session:
    def __init__(self, config: EngineConfig,
                 trace: Callable[[str], None] | None = None) -> None:
        self.config = config
        self.memory = SequenceMemory()
        self.window = EventWindow(config.window_capacity, config.min_columns)
        self.mode = LEARNING
        self.trace = trace
        self.output_letters = 0
        self.flushed = False

    @property
    def learning(self) -> bool:
        return self.mode == LEARNING

    def set_mode(self, mode: str) -> None:
        if mode not in (LEARNING, OUTPUT):
            raise ValueError(f"unknown mode {mode!r}")
        if mode == self.mode:
            return
        self.mode = mode
        if mode == OUTPUT:
            self.window.reset()

    def process_event(self, event: str) -> list[Emission]:
        window = self.window
        first = window.head is None
        col = append_column(window, event, self.memory, self.config)
        if first:
            if self.trace:
                self.trace(trace_line(col))
            return []
        score_first_level(window, self.memory)
        if self.trace:
            self.trace(trace_line(col))
        if self.mode == LEARNING:
            return []

        window.num_columns += 1
        if window.num_columns <= window.min_columns:
            return []

        out: list[Emission] = []
        if window.min_columns:
            if window.num_columns != window.capacity:
                prev = window.column_at(1)
                seq = prev.seqs[prev.best_length - 1]
                if average_word_score(seq) < self.config.gate_score:
                    return out
            else:
                out.append(Emission(OVERFLOW))
        if self.config.second_level:
            score_second_level(window, self.config.pow_mode)
        out.extend(detach_words(window))
        return out

    def feed(self, letters: Iterable[str]) -> list[Emission]:
        out: list[Emission] = []
        for ch in letters:
            out.extend(self.process_event(ch))
            if self.mode == OUTPUT:
                self.output_letters += 1
        return out

    def flush(self) -> list[Emission]:
        """Detach everything left in the window by injecting the sentinel."""
        if self.mode != OUTPUT:
            raise RuntimeError("flush is only defined in output mode")
        self.window.min_columns = 0
        self.flushed = True
        return self.process_event(self.config.flush_sentinel)

    def stats(self) -> MemoryStats:
        return self.memory.stats()


def words_of(emissions: Iterable[Emission]) -> list[str]:
    """Emitted words in order, markers dropped, forced letters kept."""
    return [e.letters for e in emissions if e.kind in (WORD, FORCED_CHAR)]


def render(emissions: Iterable[Emission]) -> str:
    """Text framing: words space-separated, one line per detachment batch,
    ``+`` for window overflow and ``-`` before a forced-out letter."""
    parts: list[str] = []
    in_batch = False
    for e in emissions:
        if e.kind == OVERFLOW:
            parts.append("+")
        elif e.kind == FORCED_CHAR:
            parts.append("-" + e.letters)
            in_batch = True
        elif e.kind == WORD:
            if in_batch:
                parts.append(" ")
            parts.append(e.letters)
            in_batch = True
        elif e.kind == BATCH_END:
            parts.append("\n")
            in_batch = False
    return "".join(parts)


def render_stats(stats: MemoryStats, n_words: int, n_chars: int) -> str:
    return (f"\nSEQUENCES STORED = {stats.alloc_count}"
            f"\nSEQUENCES FIRING = {stats.fire_count}"
            f"\nTOTAL EVENT COUNT = {stats.event_count}"
            f"\nSAMPLE LENGTH = {n_words} words, {n_chars} chars\n")
