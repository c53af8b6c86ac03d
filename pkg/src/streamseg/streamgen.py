"""Deterministic random word streams.

Words are drawn uniformly from a corpus with the classic 32-bit linear
congruential generator (multiplier 214013, increment 2531011, output bits
30..16), so a given seed reproduces the same training stream everywhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

LCG_MULTIPLIER = 214013
LCG_INCREMENT = 2531011
RAND_MAX = 0x7FFF

_NON_LETTERS = re.compile(r"[^a-z]+")


def lcg_next(state: int) -> tuple[int, int]:
    """One draw: returns ``(value, next_state)`` with ``value < 32768``."""
    state = (state * LCG_MULTIPLIER + LCG_INCREMENT) & 0xFFFFFFFF
    return (state >> 16) & RAND_MAX, state


@dataclass
class Lcg:
    state: int = 1

    def __post_init__(self) -> None:
        self.state &= 0xFFFFFFFF

    def rand(self) -> int:
        value, self.state = lcg_next(self.state)
        return value


@dataclass(frozen=True)
class Corpus:
    words: tuple[str, ...]

    def __post_init__(self) -> None:
        for w in self.words:
            if not w or _NON_LETTERS.search(w):
                raise ValueError(f"corpus words must be non-empty a-z: {w!r}")

    @classmethod
    def from_text(cls, text: str) -> Corpus:
        """Whitespace tokens, lowercased, non-letters dropped, empties skipped."""
        words = (_NON_LETTERS.sub("", tok.lower()) for tok in text.split())
        return cls(tuple(w for w in words if w))

    @classmethod
    def from_file(cls, path: str | Path) -> Corpus:
        return cls.from_text(Path(path).read_text(encoding="utf-8"))

    @classmethod
    def builtin(cls, name: str) -> Corpus:
        """``"fox"`` (the ten-word toy sentence) or ``"gettysburg"``."""
        res = resources.files(__package__) / "corpora" / f"{name}.txt"
        if not res.is_file():
            raise ValueError(f"no built-in corpus named {name!r}")
        return cls.from_text(res.read_text(encoding="utf-8"))

    @property
    def word_count(self) -> int:
        return len(self.words)

    @property
    def letter_count(self) -> int:
        return sum(len(w) for w in self.words)

    @property
    def text(self) -> str:
        return "".join(self.words)

    def boundaries(self) -> list[int]:
        return boundaries_of(self.words)


def boundaries_of(words) -> list[int]:
    """Internal boundary offsets of a word sequence (0 and the end excluded)."""
    out = []
    pos = 0
    for w in words[:-1]:
        pos += len(w)
        out.append(pos)
    return out


@dataclass
class Stream:
    letters: str
    words: list[str] = field(default_factory=list)

    @property
    def boundaries(self) -> list[int]:
        return boundaries_of(self.words)


def next_word(corpus: Corpus, rng: Lcg) -> str:
    if not corpus.words:
        raise ValueError("cannot sample from an empty corpus")
    return corpus.words[rng.rand() % corpus.word_count]


def sample_words(corpus: Corpus, n_words: int, seed: int) -> list[str]:
    if n_words < 0:
        raise ValueError("n_words must be non-negative")
    if n_words and not corpus.words:
        raise ValueError("cannot sample from an empty corpus")
    rng = Lcg(seed)
    words = corpus.words
    n = len(words)
    state = rng.state
    out = []
    for _ in range(n_words):
        state = (state * LCG_MULTIPLIER + LCG_INCREMENT) & 0xFFFFFFFF
        out.append(words[((state >> 16) & RAND_MAX) % n])
    return out


def generate(corpus: Corpus, n_words: int, seed: int) -> Stream:
    """Concatenate ``n_words`` uniformly drawn words; keeps the gold split."""
    words = sample_words(corpus, n_words, seed)
    return Stream("".join(words), words)
