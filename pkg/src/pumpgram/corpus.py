"""Corpus loading, lexicons and fair basic texts."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .grammar import Grammar
from .shape import enumerate_basic_strings


class CorpusError(ValueError):
    pass


@dataclass
class Lexicon:
    """Token to POS mapping; a token may carry several POS symbols."""

    entries: dict = field(default_factory=dict)

    @classmethod
    def parse(cls, text: str) -> "Lexicon":
        entries: dict[str, tuple] = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) < 2:
                raise CorpusError(f"lexicon line {lineno}: expected 'token POS [POS ...]'")
            tok, tags = parts[0], parts[1:]
            merged = list(entries.get(tok, ()))
            merged.extend(t for t in tags if t not in merged)
            entries[tok] = tuple(merged)
        return cls(entries)

    @classmethod
    def load(cls, path) -> "Lexicon":
        return cls.parse(Path(path).read_text(encoding="utf-8"))

    def tags(self, token: str) -> tuple:
        return self.entries[token]

    def alphabet(self) -> list[str]:
        return sorted({t for tags in self.entries.values() for t in tags})

    def expand(self, tokens: Sequence[str], lineno: int = 0) -> list[tuple]:
        """Every POS sequence the token sentence can be read as."""
        options = []
        for tok in tokens:
            if tok not in self.entries:
                raise CorpusError(f"line {lineno}: unknown token {tok!r}")
            options.append(self.entries[tok])
        return [tuple(p) for p in itertools.product(*options)]


def sort_corpus(sentences: Iterable[Sequence[str]]) -> list[tuple]:
    """Duplicate-free, ordered by length and then text."""
    return sorted({tuple(s) for s in sentences if len(s)}, key=lambda s: (len(s), s))


def parse_corpus(text: str, lexicon: Optional[Lexicon] = None) -> tuple[list[tuple], list[str]]:
    """Sentences and POS alphabet from corpus text.

    Without a lexicon each line is already a POS sequence; a ``%pos`` header
    fixes the alphabet and rejects anything outside it. With a lexicon the
    lines are token sentences and are expanded to all POS readings.
    """
    declared: Optional[list[str]] = None
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("%pos"):
            declared = (declared or []) + line.split()[1:]
            continue
        toks = line.split()
        if lexicon is not None:
            out.extend(lexicon.expand(toks, lineno))
        else:
            if declared is not None:
                bad = [t for t in toks if t not in declared]
                if bad:
                    raise CorpusError(f"line {lineno}: POS {bad[0]!r} not in the declared alphabet")
            out.append(tuple(toks))
    corpus = sort_corpus(out)
    if declared is not None:
        alphabet = list(dict.fromkeys(declared))
    elif lexicon is not None:
        alphabet = lexicon.alphabet()
    else:
        alphabet = sorted({t for s in corpus for t in s})
    return corpus, alphabet


def load_corpus(path, lexicon: Optional[Lexicon] = None) -> list[tuple]:
    """Read a corpus file; see ``parse_corpus``."""
    corpus, _ = parse_corpus(Path(path).read_text(encoding="utf-8"), lexicon)
    return corpus


def format_corpus(corpus: Iterable[Sequence[str]], alphabet: Optional[Sequence[str]] = None) -> str:
    lines = []
    if alphabet:
        lines.append("%pos " + " ".join(alphabet))
    lines.extend(" ".join(s) for s in corpus)
    return "\n".join(lines) + "\n"


def fair_basic_text(g: Grammar) -> list[tuple]:
    """All basic strings of ``g``, ordered by length: a fair basic text for g."""
    return sort_corpus(enumerate_basic_strings(g))


def generate_fair_basic_text(g: Grammar, path=None) -> list[tuple]:
    """Fair basic text of ``g``; also written to ``path`` when given."""
    corpus = fair_basic_text(g)
    if path is not None:
        Path(path).write_text(format_corpus(corpus, g.alphabet), encoding="utf-8")
    return corpus
