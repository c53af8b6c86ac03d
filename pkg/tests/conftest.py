from __future__ import annotations

from pathlib import Path

import pytest

from streamseg import Corpus, EngineConfig, Session
from streamseg.streamgen import sample_words

GOLDEN = Path(__file__).parent / "golden"

_acceptance_lines: list[str] = []


def record_acceptance(line: str) -> None:
    _acceptance_lines.append(line)


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def fox() -> Corpus:
    return Corpus.builtin("fox")


@pytest.fixture(scope="session")
def gettysburg() -> Corpus:
    return Corpus.builtin("gettysburg")


def trained_session(corpus: Corpus, k: float, n_words: int,
                    seed: int = 123456, **overrides) -> Session:
    cfg = EngineConfig.from_k(k, corpus.letter_count, **overrides)
    s = Session(cfg)
    for w in sample_words(corpus, n_words, seed):
        s.feed(w)
    return s


@pytest.fixture
def fox_session(fox) -> Session:
    return trained_session(fox, 0.4, 500)
