#!/usr/bin/env python3
"""Growth table of a k=1 run on the English fragment, with exact lattice sizes.

Writes CSV (depth,total,visited,optimal) to stdout or ``-o``. ``total`` is
the exact number of canonical vertices per layer up to ``--lattice-depth``
and blank beyond it.
"""
import argparse
import sys
from pathlib import Path

from pumpgram.corpus import fair_basic_text
from pumpgram.grammar import load_grammar
from pumpgram.lattice import layer_counts
from pumpgram.learner import MetaParams, learn
from pumpgram.report import growth_csv

FIXTURE = Path(__file__).resolve().parents[1] / "src" / "pumpgram" / "fixtures" / "english_fragment.cfg"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lattice-depth", type=int, default=5, help="5 takes about 20 seconds")
    ap.add_argument("-o", "--output")
    args = ap.parse_args()
    res = learn(fair_basic_text(load_grammar(FIXTURE)), MetaParams(m=2, k=1, stop="first"))
    text = growth_csv(res, layer_counts(args.lattice_depth))
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
