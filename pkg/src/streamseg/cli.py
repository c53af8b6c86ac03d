"""Command line front end.

    streamseg generate --corpus fox --n 500 --stream s.txt --gold g.txt
    streamseg run --corpus gettysburg --emit replica
    streamseg sweep --corpus gettysburg --k 0.76 0.765 --learn-words 175000

``--corpus`` takes a text file, or the name of a built-in corpus (``fox``,
``gettysburg``), in which case ``--k`` and ``--learn-words`` default to the
tuned values for it.

Exit codes: 0 ok, 1 usage or input error, 2 golden output mismatch.
"""

from __future__ import annotations

import argparse
import difflib
import logging
import sys
from pathlib import Path

from .experiment import DEFAULT_SEED, PRESETS, RunSpec, format_sweep, run, sweep
from .evaluation import format_errors
from .streamgen import Corpus, generate

log = logging.getLogger("streamseg")

EXIT_USAGE = 1
EXIT_GOLDEN = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def load_corpus(name: str) -> Corpus:
    path = Path(name)
    if path.exists():
        try:
            return Corpus.from_file(path)
        except (OSError, UnicodeDecodeError) as exc:
            raise UsageError(f"cannot read corpus {name}: {exc}") from exc
    if name in PRESETS:
        return Corpus.builtin(name)
    raise UsageError(f"corpus not found: {name}")


def _preset(args) -> tuple[float | None, int | None]:
    k, n = PRESETS.get(args.corpus, (None, None))
    if Path(args.corpus).exists():
        k, n = None, None
    return k, n


def _spec(args, corpus: Corpus, k: float, learn_words: int) -> RunSpec:
    try:
        return RunSpec(corpus, k, learn_words, seed=args.seed, bias=args.bias,
                       window=args.window, min_columns=args.min_columns,
                       gate=args.gate, second_level=not args.no_second_level,
                       pow_mode=args.pow_mode)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def cmd_generate(args) -> int:
    corpus = load_corpus(args.corpus)
    if args.n < 0:
        raise UsageError("--n must be non-negative")
    if args.n and not corpus.words:
        raise UsageError("corpus is empty")
    stream = generate(corpus, args.n, args.seed)
    Path(args.stream).write_text(stream.letters + ("\n" if stream.letters else ""),
                                 encoding="utf-8")
    Path(args.gold).write_text("".join(f"{b}\n" for b in stream.boundaries),
                               encoding="utf-8")
    log.info("wrote %d words, %d letters", args.n, len(stream.letters))
    return 0


def cmd_run(args) -> int:
    corpus = load_corpus(args.corpus)
    k0, n0 = _preset(args)
    k = args.k[0] if args.k else k0
    n = args.learn_words[0] if args.learn_words else n0
    if k is None or n is None:
        raise UsageError("--k and --learn-words are required for this corpus")
    spec = _spec(args, corpus, k, n)

    trace_fh = None
    trace = None
    if args.trace:
        trace_fh = (sys.stderr if args.trace == "-"
                    else open(args.trace, "w", encoding="utf-8"))
        trace = lambda line: trace_fh.write(line + "\n")  # noqa: E731

    hook = None
    if args.dump_memory:
        def hook(session):
            with open(args.dump_memory, "w", encoding="utf-8") as fh:
                session.memory.dump(fh)
    try:
        rep = run(spec, trace=trace, session_hook=hook)
    finally:
        if trace_fh is not None and trace_fh is not sys.stderr:
            trace_fh.close()

    if args.emit == "replica":
        _write(args.out, rep.replica_text)
    elif args.emit == "clean":
        _write(args.out, rep.clean_text)
    else:
        st = rep.stats
        _write(args.out, rep.evaluation.to_text()
               + f"sequences_stored: {st.alloc_count}\n"
               + f"sequences_firing: {st.fire_count}\n"
               + f"total_event_count: {st.event_count}\n"
               + format_errors(rep.evaluation.errors))
    if args.report_json:
        Path(args.report_json).write_text(rep.evaluation.to_json() + "\n",
                                          encoding="utf-8")

    if args.golden:
        expected = Path(args.golden).read_text(encoding="utf-8")
        if expected != rep.replica_text:
            diff = difflib.unified_diff(
                expected.splitlines(keepends=True),
                rep.replica_text.splitlines(keepends=True),
                fromfile=args.golden, tofile="replica output")
            sys.stderr.writelines(diff)
            log.error("replica output differs from %s", args.golden)
            return EXIT_GOLDEN
    return 0


def cmd_sweep(args) -> int:
    corpus = load_corpus(args.corpus)
    k0, n0 = _preset(args)
    ks = args.k or ([k0] if k0 is not None else None)
    ns = args.learn_words or ([n0] if n0 is not None else None)
    if not ks or not ns:
        raise UsageError("--k and --learn-words are required for this corpus")
    base = _spec(args, corpus, ks[0], ns[0])
    rows = sweep(base, ks, ns, jobs=args.jobs)
    _write(args.out, format_sweep(rows))
    return 0


def _engine_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--corpus", required=True,
                   help="corpus text file, or built-in name fox / gettysburg")
    p.add_argument("--k", type=float, nargs="+",
                   help="threshold numerator; frequency cutoff is K / letters")
    p.add_argument("--learn-words", type=int, nargs="+",
                   help="number of randomly drawn words in the learning phase")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--bias", type=float, default=4.567)
    p.add_argument("--window", type=int, default=32,
                   help="event window capacity in columns")
    p.add_argument("--min-columns", type=int, default=16)
    p.add_argument("--gate", type=float, default=0.50,
                   help="average word score needed to trigger detachment")
    p.add_argument("--no-second-level", action="store_true",
                   help="pick boundaries from first-level scores only")
    p.add_argument("--pow-mode", choices=("float", "double"), default="float",
                   help=argparse.SUPPRESS)
    p.add_argument("--out", help="output file (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="streamseg", description=__doc__.split("\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    g = sub.add_parser("generate", help="write a random word stream")
    g.add_argument("--corpus", required=True)
    g.add_argument("--n", type=int, required=True, help="number of words")
    g.add_argument("--seed", type=int, default=DEFAULT_SEED)
    g.add_argument("--stream", required=True, help="letter stream output")
    g.add_argument("--gold", required=True, help="gold boundary offsets output")
    g.set_defaults(func=cmd_generate)

    r = sub.add_parser("run", help="learn, segment the corpus, evaluate")
    _engine_options(r)
    r.add_argument("--emit", choices=("replica", "clean", "report"),
                   default="replica")
    r.add_argument("--trace", nargs="?", const="-",
                   help="write the output-phase trellis trace (default stderr)")
    r.add_argument("--golden", help="expected replica output; exit 2 on mismatch")
    r.add_argument("--report-json", help="write the evaluation report as JSON")
    r.add_argument("--dump-memory", help="write the sequence memory as TSV")
    r.set_defaults(func=cmd_run)

    s = sub.add_parser("sweep", help="compare runs across K / learning lengths")
    _engine_options(s)
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    if args.command == "run" and args.k and len(args.k) > 1:
        parser.error("run takes a single --k; use sweep for several")
    if args.command == "run" and args.learn_words and len(args.learn_words) > 1:
        parser.error("run takes a single --learn-words; use sweep for several")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"streamseg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
