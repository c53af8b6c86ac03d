"""Learn-then-segment runs over a corpus, as used by the CLI and the tests."""

from __future__ import annotations

import dataclasses
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .config import EngineConfig
from .evaluation import EvalReport, Segmentation, compare
from .memory import MemoryStats
from .segmenter import OUTPUT, Session, render, render_stats, words_of
from .streamgen import Corpus, sample_words
from .trellis import Emission

DEFAULT_SEED = 123456

# (K, learning words) tuned per built-in corpus
PRESETS = {
    "fox": (0.4, 500),
    "gettysburg": (0.76, 175_000),
}


@dataclass(frozen=True)
class RunSpec:
    corpus: Corpus
    k: float
    learn_words: int
    seed: int = DEFAULT_SEED
    bias: float = 4.567
    window: int = 32
    min_columns: int = 16
    gate: float = 0.50
    second_level: bool = True
    pow_mode: str = "float"

    def __post_init__(self) -> None:
        if self.k <= 0:
            raise ValueError("K must be positive")
        if self.learn_words < 0:
            raise ValueError("learning word count must be non-negative")
        if self.corpus.letter_count == 0:
            raise ValueError("corpus has no letters")

    def config(self) -> EngineConfig:
        return EngineConfig.from_k(
            self.k, self.corpus.letter_count, bias=self.bias,
            window_capacity=self.window, min_columns=self.min_columns,
            gate_score=self.gate, second_level=self.second_level,
            pow_mode=self.pow_mode)

    def replace(self, **changes) -> RunSpec:
        return dataclasses.replace(self, **changes)


@dataclass
class SegmentationReport:
    spec: RunSpec
    emissions: list[Emission]
    stats: MemoryStats
    output_letters: int
    evaluation: EvalReport
    words: list[str] = field(default_factory=list)

    @property
    def replica_text(self) -> str:
        """Detachment lines followed by the memory statistics block."""
        return render(self.emissions) + render_stats(
            self.stats, self.spec.corpus.word_count, self.output_letters)

    @property
    def clean_text(self) -> str:
        return " ".join(self.words) + "\n"


def run(spec: RunSpec, trace: Callable[[str], None] | None = None,
        session_hook: Callable[[Session], None] | None = None
        ) -> SegmentationReport:
    """Learn on sampled words, then segment the corpus once in order.

    ``trace`` receives one line per output-phase event. ``session_hook`` is
    called with the finished session (memory dumps, inspection).
    """
    corpus = spec.corpus
    session = Session(spec.config())
    for word in sample_words(corpus, spec.learn_words, spec.seed):
        session.feed(word)

    session.set_mode(OUTPUT)
    session.trace = trace
    emissions = session.feed(corpus.text)
    emissions += session.flush()

    words = words_of(emissions)
    report = compare(Segmentation.from_words(words),
                     Segmentation.from_words(corpus.words))
    if session_hook is not None:
        session_hook(session)
    return SegmentationReport(spec, emissions, session.stats(),
                              session.output_letters, report, words)


@dataclass(frozen=True)
class SweepRow:
    k: float
    learn_words: int
    boundary_errors: int
    f1: float
    errors: tuple[str, ...]
    stored: int
    firing: int


def _sweep_one(spec: RunSpec) -> SweepRow:
    rep = run(spec)
    ev = rep.evaluation
    labels = tuple(" ".join(e.pred) for e in ev.errors)
    return SweepRow(spec.k, spec.learn_words, ev.boundary_errors, ev.f1,
                    labels, rep.stats.alloc_count, rep.stats.fire_count)


def sweep(base: RunSpec, ks: Iterable[float],
          learn_words: Iterable[int] | None = None,
          jobs: int = 1) -> list[SweepRow]:
    """One row per (K, learning words) pair, in the order given."""
    lws = list(learn_words) if learn_words is not None else [base.learn_words]
    specs = [base.replace(k=k, learn_words=n) for k in ks for n in lws]
    if jobs > 1 and len(specs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_sweep_one, specs))
    return [_sweep_one(s) for s in specs]


def format_sweep(rows: list[SweepRow]) -> str:
    out = [f"{'K':>8} {'learn':>8} {'errors':>6} {'F1':>8} "
           f"{'stored':>7} {'firing':>7}  predicted error spans"]
    for r in rows:
        out.append(f"{r.k:>8g} {r.learn_words:>8d} {r.boundary_errors:>6d} "
                   f"{r.f1:>8.5f} {r.stored:>7d} {r.firing:>7d}  "
                   + ", ".join(r.errors))
    return "\n".join(out) + "\n"
