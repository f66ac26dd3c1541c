#!/usr/bin/env python3
"""Learn the English fragment from its fair basic text and summarise the optima.

    python3 scripts/run_english_fragment.py            # k=1, stops at the first global optimum
    python3 scripts/run_english_fragment.py --k 2      # k=2 with linked steps, all layers to depth 8
"""
import argparse
import logging
from pathlib import Path

from pumpgram.corpus import fair_basic_text
from pumpgram.grammar import canonicalize, load_grammar
from pumpgram.learner import MetaParams, learn
from pumpgram.shape import basic_string_set

FIXTURE = Path(__file__).resolve().parents[1] / "src" / "pumpgram" / "fixtures" / "english_fragment.cfg"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--k", type=int, default=1, choices=(1, 2))
    ap.add_argument("-v", "--verbose", action="store_true")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(asctime)s %(message)s")

    target = load_grammar(FIXTURE)
    corpus = fair_basic_text(target)
    if args.k == 1:
        params = MetaParams(m=2, k=1, stop="first")
    else:
        params = MetaParams(m=2, k=2, stop="exhaust", max_depth=8, linked_steps=True)
    res = learn(corpus, params)
    basics = basic_string_set(target)

    print(f"corpus: {len(corpus)} sentences, stopped by {res.stopped_by} after {res.elapsed:.1f}s")
    print("depth  visited  optimal")
    for r in res.growth_rows():
        print(f"{r.depth:5d}  {r.visited:7d}  {r.optimal:7d}")
    glob = res.global_optima()
    same = [o for o in glob if basic_string_set(o.grammar) == basics]
    print(f"{len(glob)} global optima, {len(same)} with the target's basic strings")
    for o in (same or glob)[:3]:
        print()
        print(f"depth {o.depth}, fitness {o.fitness}")
        print(canonicalize(o.grammar).to_text())


if __name__ == "__main__":
    main()
