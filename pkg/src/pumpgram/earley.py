"""Earley recognition with a shared packed parse forest.

Items are unique per ``(rule, dot, origin, end)`` and remember how they were
built. Completed items are packed into spans keyed ``(nonterminal, i, j)``,
each holding the set of alternative analyses:

* ``('b', rule_index, mid)`` for a binary rule split at ``mid``,
* ``('u', rule_index)`` for the start-unary rule,
* ``('t', pos)`` for a POS assignment already in the grammar,
* ``('w', pos)`` for a wildcard leaf whose POS rule is still to be chosen.

There are no epsilon rules, so every completion at position ``j`` comes
from an item whose origin is strictly smaller and the chart can be filled
strictly left to right.
"""
from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .grammar import START, Grammar, Vertex, format_rule, is_unary, nt_name
from .shape import ROOT_STATE, ShapeVector, basic_string_set, enter

SATISFACTION_CAP = 64


class ParseInputError(ValueError):
    """Sentence uses a POS symbol outside the grammar's alphabet."""


@dataclass
class ParseForest:
    sentence: tuple
    rules: tuple  # core rules indexed by rule id
    items: dict = field(default_factory=dict)  # (rule, dot, i, j) -> set of backpointers
    spans: dict = field(default_factory=dict)  # (nt, i, j) -> set of alternatives
    capped: bool = False  # satisfaction cap was hit

    @property
    def root(self) -> Optional[tuple]:
        key = (START, 0, len(self.sentence))
        return key if key in self.spans and self.sentence else None

    @property
    def accepted(self) -> bool:
        return self.root is not None

    def children(self, span: tuple, alt: tuple) -> tuple:
        nt, i, j = span
        kind = alt[0]
        if kind == "b":
            _, b, c = self.rules[alt[1]]
            mid = alt[2]
            return ((b, i, mid), (c, mid, j))
        if kind == "u":
            return ((self.rules[alt[1]][1], i, j),)
        return ()

    def to_json(self) -> str:
        nodes = []
        for (nt, i, j), alts in sorted(self.spans.items()):
            out = []
            for alt in sorted(alts, key=repr):
                if alt[0] in ("b", "u"):
                    out.append({"rule": format_rule(self.rules[alt[1]]), "children": [list(c) for c in self.children((nt, i, j), alt)]})
                else:
                    out.append({"pos": alt[1], "wildcard": alt[0] == "w"})
            nodes.append({"span": [i, j], "nonterminal": nt_name(nt), "alternatives": out})
        return json.dumps({"sentence": list(self.sentence), "nodes": nodes}, indent=1)


def _earley(core: Sequence, lexical, sentence: Sequence[str]) -> ParseForest:
    """Shared chart construction.

    ``lexical(nt, pos)`` returns the leaf alternative for ``nt`` over a
    token, or None when the nonterminal cannot take it.
    """
    rules = tuple(core)
    sent = tuple(sentence)
    n = len(sent)
    by_lhs: dict[int, list[int]] = {}
    for idx, r in enumerate(rules):
        by_lhs.setdefault(r[0], []).append(idx)

    def rhs(idx):
        r = rules[idx]
        return r[1:]

    forest = ParseForest(sent, rules)
    items = forest.items
    spans = forest.spans
    waiting = [dict() for _ in range(n + 1)]  # j -> nt -> list of item keys
    lex_at = [dict() for _ in range(n + 1)]  # j -> nt -> leaf alternative over (j, j+1)

    def add_span_alt(key, alt) -> bool:
        alts = spans.get(key)
        if alts is None:
            spans[key] = {alt}
            return True
        alts.add(alt)
        return False

    for j in range(n + 1):
        agenda: list = []
        predicted: set = set()

        def add_item(key, bp):
            r, dot, i, jj = key
            got = items.get(key)
            if got is not None:
                if bp is not None:
                    got.add(bp)
                    if dot == len(rhs(r)):
                        _register(key, bp)
                return
            items[key] = {bp} if bp is not None else set()
            if dot == len(rhs(r)):
                _register(key, bp)
            else:
                agenda.append(key)

        def _register(key, bp):
            r, dot, i, jj = key
            rule = rules[r]
            if is_unary(rule):
                alt = ("u", r)
            else:
                # bp = (prev item, child span); the split is the child start
                alt = ("b", r, bp[1][1])
            if add_span_alt((rule[0], i, jj), alt):
                agenda.append(("span", rule[0], i))

        def predict(y):
            if y in predicted:
                return
            predicted.add(y)
            for r in by_lhs.get(y, ()):
                add_item((r, 0, j, j), None)
            if j < n:
                leaf = lexical(y, sent[j])
                if leaf is not None:
                    lex_at[j][y] = leaf

        if j == 0:
            predict(START)
        # leaves scanned at j-1 complete here
        if j > 0:
            for y, leaf in lex_at[j - 1].items():
                key = (y, j - 1, j)
                add_span_alt(key, leaf)
                for w in waiting[j - 1].get(y, ()):
                    r, dot, i, _ = w
                    add_item((r, dot + 1, i, j), (w, key))
        while agenda:
            key = agenda.pop()
            if key[0] == "span":
                _, a, i = key
                span_key = (a, i, j)
                for w in list(waiting[i].get(a, ())):
                    r, dot, o, _ = w
                    add_item((r, dot + 1, o, j), (w, span_key))
                continue
            r, dot, i, _ = key
            y = rhs(r)[dot]
            waiting[j].setdefault(y, []).append(key)
            predict(y)
    return forest


def parse(g: Grammar, sentence: Sequence[str]) -> ParseForest:
    """Parse a POS sequence with the grammar's core and POS rules."""
    alphabet = set(g.alphabet)
    for s in sentence:
        if s not in alphabet:
            raise ParseInputError(f"unknown POS symbol {s!r}")
    pos = {}
    for x, p in g.pos:
        pos.setdefault(x, set()).add(p)

    def lexical(y, tok):
        return ("t", tok) if tok in pos.get(y, ()) else None

    return _earley(g.core, lexical, sentence)


def wildcard_forest(core, sentence: Sequence[str], base: Iterable = (), allowed=None) -> ParseForest:
    """Forest in wildcard mode: any non-start nonterminal may cover any token.

    POS rules in ``base`` are treated as already present (``'t'`` leaves).
    ``allowed(nt, pos)`` can veto individual wildcard leaves.
    """
    rules = core.rules if isinstance(core, Vertex) else tuple(core)
    base_set = set(base)

    def lexical(y, tok):
        if y == START:
            return None
        if (y, tok) in base_set:
            return ("t", tok)
        if allowed is not None and not allowed(y, tok):
            return None
        return ("w", tok)

    return _earley(rules, lexical, sentence)


def _minimize(sets: Iterable[frozenset]) -> list[frozenset]:
    uniq = sorted(set(sets), key=lambda s: (len(s), sorted(s)))
    out: list[frozenset] = []
    for s in uniq:
        if not any(t <= s for t in out):
            out.append(s)
    return out


def satisfactions(forest: ParseForest, cap: int = SATISFACTION_CAP) -> list[frozenset]:
    """Minimal POS-rule sets that complete some parse of the sentence."""
    root = forest.root
    if root is None:
        return []
    memo: dict = {}

    def sat(span):
        got = memo.get(span)
        if got is not None:
            return got
        nt = span[0]
        acc: list[frozenset] = []
        for alt in forest.spans[span]:
            kind = alt[0]
            if kind == "t":
                acc.append(frozenset())
            elif kind == "w":
                acc.append(frozenset({(nt, alt[1])}))
            else:
                kids = forest.children(span, alt)
                combos = [frozenset()]
                for kid in kids:
                    combos = _minimize(a | b for a in combos for b in sat(kid))
                    if not combos:
                        break
                acc.extend(combos)
        res = _minimize(acc)
        if len(res) > cap:
            forest.capped = True
            res = res[:cap]
        memo[span] = res
        return res

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 10_000))
    try:
        res = sat(root)
    finally:
        sys.setrecursionlimit(old)
    return sorted(res, key=lambda s: (len(s), sorted(s)))


def wildcard_parse(core, sentence: Sequence[str], base: Iterable = (), cap: int = SATISFACTION_CAP, allowed=None) -> list[frozenset]:
    """Minimal POS assignments letting ``core`` parse ``sentence``.

    >>> wildcard_parse(Vertex(((0, 1), (1, 2, 3))), ["PN", "V0"])
    [frozenset({(2, 'PN'), (3, 'V0')})]
    """
    return satisfactions(wildcard_forest(core, sentence, base, allowed), cap)


def has_basic_derivation(forest: ParseForest) -> bool:
    """True iff some derivation in the forest passes the basic path criterion."""
    root = forest.root
    if root is None:
        raise ValueError("forest has no root span; the sentence did not parse")
    memo: dict = {}

    def ok(span, st) -> bool:
        key = (span, st)
        got = memo.get(key)
        if got is not None:
            return got
        memo[key] = False
        res = False
        for alt in forest.spans[span]:
            if alt[0] in ("t", "w"):
                res = True
                break
            kids = forest.children(span, alt)
            if all((s2 := enter(st, kid[0])) is not None and ok(kid, s2) for kid in kids):
                res = True
                break
        memo[key] = res
        return res

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 10_000))
    try:
        return ok(root, ROOT_STATE)
    finally:
        sys.setrecursionlimit(old)


def evidence_shape(g: Grammar, corpus: Sequence[Sequence[str]], method: str = "forest") -> tuple[ShapeVector, frozenset]:
    """ES(D|g) and the indices of corpus sentences that parse at all.

    ``method="forest"`` checks each parse forest for a basic derivation.
    ``method="basic-set"`` intersects the corpus with the grammar's basic
    strings instead; a string has a basic derivation exactly when it is one
    of those, so both give the same vector.
    """
    parsed = []
    lengths = []
    basic = basic_string_set(g) if method == "basic-set" else None
    if method not in ("forest", "basic-set"):
        raise ValueError(f"unknown method {method!r}")
    alphabet = set(g.alphabet)
    for idx, s in enumerate(corpus):
        s = tuple(s)
        if any(x not in alphabet for x in s):
            continue  # a POS the grammar never assigns cannot parse
        f = parse(g, s)
        if not f.accepted:
            continue
        parsed.append(idx)
        if basic is not None:
            if s in basic:
                lengths.append(len(s))
        elif has_basic_derivation(f):
            lengths.append(len(s))
    return ShapeVector.from_lengths(lengths, "ES"), frozenset(parsed)
