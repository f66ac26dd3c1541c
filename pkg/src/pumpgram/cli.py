"""Command-line entry points: learn, generate, shape, expected-time."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction

from .corpus import CorpusError, Lexicon, format_corpus, generate_fair_basic_text, load_corpus
from .coupon import expected_collection_time, expected_collection_time_exact, simulate_collection_time
from .fitness import as_fraction
from .grammar import GrammarError, load_grammar
from .lattice import layer_counts
from .learner import Learner, MetaParams, ResourceCapExceeded
from .report import build_report, dumps_report, emit_growth_table, write_report
from .shape import grammar_shape

EXIT_OK = 0
EXIT_INPUT = 2  # bad arguments or unreadable input (argparse also uses 2)
EXIT_NO_OPTIMUM = 3
EXIT_RESOURCE_CAP = 4

log = logging.getLogger("pumpgram")


def _rational(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _add_learn(sub) -> None:
    p = sub.add_parser("learn", help="search the hypothesis lattice for optimal grammars")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--corpus", help="corpus file: POS sequences, or token sentences with --lexicon")
    src.add_argument("--target", help="target grammar; learn from its fair basic text")
    p.add_argument("--lexicon", help="lexicon file with lines 'token POS [POS ...]'")
    p.add_argument("--m", type=int, default=2, help="rules added freely before the first optimum")
    p.add_argument("--k", type=int, default=1, help="rules allowed between consecutive optima")
    p.add_argument("--t", type=_rational, default=Fraction(1), help="fitness threshold, e.g. 1, 0.9 or 49/51")
    p.add_argument(
        "--stop",
        choices=("first", "accumulate", "exhaust"),
        default="accumulate",
        help="stop at the first global optimum, collect optima for k more layers, or search every layer up to --max-depth",
    )
    p.add_argument("--max-depth", type=int, default=None, help="depth cap (the search horizon with --stop exhaust)")
    p.add_argument("--max-frontier", type=int, default=None, help="abort when a layer holds more vertices than this")
    p.add_argument("--linked-steps", action="store_true", help="restrict multi-rule steps to one connected constituent (faster, not exhaustive)")
    p.add_argument("--seed", type=int, default=0, help="recorded in the report; the search itself is deterministic")
    p.add_argument("--report", help="write the JSON report here (default: stdout)")
    p.add_argument("--growth-csv", help="write the growth table here")
    p.add_argument("--lattice-depth", type=int, default=4, help="deepest layer counted exactly for the 'total' column")


def _add_generate(sub) -> None:
    p = sub.add_parser("generate", help="write the fair basic text of a grammar")
    p.add_argument("grammar")
    p.add_argument("-o", "--output", help="output corpus file (default: stdout)")


def _add_shape(sub) -> None:
    p = sub.add_parser("shape", help="print the grammar shape vector as a JSON array")
    p.add_argument("grammar")


def _add_expected_time(sub) -> None:
    p = sub.add_parser("expected-time", help="expected draws until every string is seen")
    p.add_argument("probs", nargs="+", type=_rational, help="per-string probabilities")
    p.add_argument("--exact", action="store_true", help="print an exact fraction")
    p.add_argument("--simulate", type=int, default=0, metavar="TRIALS")
    p.add_argument("--seed", type=int, default=0)


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pumpgram", description=__doc__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)
    _add_learn(sub)
    _add_generate(sub)
    _add_shape(sub)
    _add_expected_time(sub)
    return ap


def run_learn(args) -> int:
    if args.corpus:
        lexicon = Lexicon.load(args.lexicon) if args.lexicon else None
        corpus = load_corpus(args.corpus, lexicon)
    else:
        corpus = generate_fair_basic_text(load_grammar(args.target))
    params = MetaParams(
        m=args.m,
        k=args.k,
        t=args.t,
        stop=args.stop,
        max_depth=args.max_depth,
        max_frontier=args.max_frontier,
        linked_steps=args.linked_steps,
    )
    status = EXIT_OK
    if not corpus:
        learner = Learner(corpus, params)
        result = learner.result
        result.stopped_by = "empty-corpus"
        status = EXIT_NO_OPTIMUM
    else:
        try:
            result = Learner(corpus, params).run()
        except ResourceCapExceeded as exc:
            log.warning("%s", exc)
            result = exc.partial
            status = EXIT_RESOURCE_CAP
        else:
            if not result.global_optima():
                status = EXIT_NO_OPTIMUM
    totals = layer_counts(args.lattice_depth, max_fresh=params.max_fresh) if args.lattice_depth > 0 else None
    report = build_report(result, params, corpus, totals, seed=args.seed)
    if args.report:
        write_report(report, args.report)
    else:
        sys.stdout.write(dumps_report(report))
    if args.growth_csv:
        emit_growth_table(result, args.growth_csv, totals)
    return status


def run_generate(args) -> int:
    g = load_grammar(args.grammar)
    corpus = generate_fair_basic_text(g, args.output)
    if not args.output:
        sys.stdout.write(format_corpus(corpus, g.alphabet))
    return EXIT_OK


def run_shape(args) -> int:
    gs = grammar_shape(load_grammar(args.grammar))
    print(json.dumps(list(gs.counts)))
    return EXIT_OK


def run_expected_time(args) -> int:
    probs = list(args.probs)
    if args.exact:
        print(expected_collection_time_exact(probs))
    else:
        print(expected_collection_time([float(p) for p in probs]))
    if args.simulate:
        mean, se = simulate_collection_time([float(p) for p in probs], args.simulate, seed=args.seed, return_stderr=True)
        print(f"simulated {mean} +/- {se}")
    return EXIT_OK


COMMANDS = {"learn": run_learn, "generate": run_generate, "shape": run_shape, "expected-time": run_expected_time}


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (OSError, CorpusError, GrammarError, ValueError) as exc:
        print(f"pumpgram: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
