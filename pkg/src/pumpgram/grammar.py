"""Near-CNF grammars, canonical naming and lattice adjacency.

Nonterminals are small integers. ``0`` is the start symbol ``S`` and
``1..n`` print as ``X1..Xn``. Core rules are tuples: ``(0, x)`` for the
start-unary rule ``S -> Xx`` and ``(a, b, c)`` for ``Xa -> Xb Xc``; plain
tuple ordering therefore puts every start-unary rule before every binary
rule. POS-assignment rules are ``(x, "PN")`` pairs.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

START = 0

CoreRule = tuple  # (0, x) | (a, b, c)
PosRule = tuple  # (x, name)


class GrammarError(ValueError):
    """Raised for structurally malformed rules or grammar text."""


def is_unary(rule: CoreRule) -> bool:
    return len(rule) == 2


def rule_symbols(rule: CoreRule) -> tuple[int, ...]:
    """Nonterminals on either side of a core rule, S excluded."""
    return tuple(x for x in rule if x != START) if is_unary(rule) else rule


def check_core_rule(rule: CoreRule) -> None:
    if is_unary(rule):
        lhs, x = rule
        if lhs != START or x == START:
            raise GrammarError(f"unary rules must have the form S -> X, got {rule!r}")
    elif len(rule) == 3:
        if START in rule:
            raise GrammarError(f"S may not appear in a binary rule: {rule!r}")
    else:
        raise GrammarError(f"not a core rule: {rule!r}")
    if any(not isinstance(x, int) or x < 0 for x in rule):
        raise GrammarError(f"nonterminal ids must be non-negative ints: {rule!r}")


def nt_name(x: int) -> str:
    return "S" if x == START else f"X{x}"


def format_rule(rule: tuple) -> str:
    if isinstance(rule[-1], str):
        return f"{nt_name(rule[0])} -> {rule[1]}"
    if is_unary(rule):
        return f"S -> {nt_name(rule[1])}"
    a, b, c = rule
    return f"{nt_name(a)} -> {nt_name(b)} {nt_name(c)}"


@dataclass(frozen=True)
class Vertex:
    """A set of core rules: one point of the hypothesis lattice."""

    rules: tuple = ()

    def __post_init__(self):
        rules = tuple(sorted(set(self.rules)))
        for r in rules:
            check_core_rule(r)
        object.__setattr__(self, "rules", rules)

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self) -> Iterator[CoreRule]:
        return iter(self.rules)

    def __contains__(self, rule) -> bool:
        return rule in self.rules

    def with_rule(self, rule: CoreRule) -> "Vertex":
        return Vertex(self.rules + (rule,))

    def without(self, rule: CoreRule) -> "Vertex":
        return Vertex(tuple(r for r in self.rules if r != rule))

    def nonterminals(self) -> frozenset[int]:
        return frozenset(x for r in self.rules for x in rule_symbols(r))

    @property
    def key(self) -> tuple:
        """Canonical hash key: the serialized rules of the canonical form."""
        return canonical_key(self.rules, ())

    def __str__(self) -> str:
        return "{" + ", ".join(format_rule(r) for r in self.rules) + "}"


@dataclass(frozen=True)
class Grammar:
    """Core rules plus POS-assignment rules, both kept sorted and duplicate-free."""

    core: tuple = ()
    pos: tuple = ()
    alphabet: tuple = field(default=(), compare=False)

    def __post_init__(self):
        core = tuple(sorted(set(self.core)))
        for r in core:
            check_core_rule(r)
        pos = tuple(sorted(set(self.pos)))
        for x, p in pos:
            if x == START:
                raise GrammarError(f"S cannot take a POS assignment ({p})")
        object.__setattr__(self, "core", core)
        object.__setattr__(self, "pos", pos)
        alpha = tuple(sorted(set(self.alphabet) | {p for _, p in pos}))
        object.__setattr__(self, "alphabet", alpha)

    @classmethod
    def from_vertex(cls, v: Vertex, pos: Iterable[PosRule] = ()) -> "Grammar":
        return cls(v.rules, tuple(pos))

    @property
    def vertex(self) -> Vertex:
        return Vertex(self.core)

    def nonterminals(self) -> frozenset[int]:
        nts = {x for r in self.core for x in rule_symbols(r)}
        nts.update(x for x, _ in self.pos)
        return frozenset(nts)

    @property
    def n_nonterminals(self) -> int:
        """Number of non-start nonterminal ids in use (|V|)."""
        return len(self.nonterminals())

    def union(self, core: Iterable[CoreRule] = (), pos: Iterable[PosRule] = ()) -> "Grammar":
        return Grammar(self.core + tuple(core), self.pos + tuple(pos), self.alphabet)

    def subgrammar(self, core: Iterable[CoreRule], pos: Iterable[PosRule]) -> "Grammar":
        return Grammar(tuple(core), tuple(pos), self.alphabet)

    def to_text(self, header: bool = True) -> str:
        lines = []
        if header and self.alphabet:
            lines.append("%pos " + " ".join(self.alphabet))
        lines.extend(format_rule(r) for r in self.core)
        lines.extend(format_rule(r) for r in self.pos)
        return "\n".join(lines) + "\n"

    def __str__(self) -> str:
        core = ", ".join(format_rule(r) for r in self.core)
        pos = ", ".join(format_rule(r) for r in self.pos)
        return "{" + core + "} [" + pos + "]"


# --------------------------------------------------------------------------
# canonical naming


def _encode(core: Iterable[CoreRule], pos: Iterable[PosRule]) -> list[tuple]:
    enc = []
    for r in core:
        enc.append((0, 0, r[1]) if is_unary(r) else (1,) + tuple(r))
    for x, p in pos:
        enc.append((2, x, p))
    return enc


def _decode(enc: Iterable[tuple]) -> tuple[tuple, tuple]:
    core, pos = [], []
    for e in enc:
        if e[0] == 0:
            core.append((0, e[2]))
        elif e[0] == 1:
            core.append(e[1:])
        else:
            pos.append((e[1], e[2]))
    return tuple(core), tuple(pos)


def _slots(e: tuple) -> range:
    # positions holding nonterminal ids
    if e[0] == 0:
        return range(2, 3)
    if e[0] == 1:
        return range(1, 4)
    return range(1, 2)


def _min_form(e: tuple, mapping: dict, nxt: int) -> tuple[tuple, list]:
    """Smallest relabeling of ``e`` given a partial mapping.

    Unmapped nonterminals take the next free labels in order of appearance.
    Returns the form and the new (old, new) assignments it implies.
    """
    out = list(e)
    fresh = []
    local = {}
    for i in _slots(e):
        x = e[i]
        if x in mapping:
            out[i] = mapping[x]
        elif x in local:
            out[i] = local[x]
        else:
            local[x] = nxt
            fresh.append((x, nxt))
            out[i] = nxt
            nxt += 1
    return tuple(out), fresh


def _canonical_search(enc: list[tuple]) -> tuple[tuple, dict]:
    best: list = [None, None]

    def rec(remaining: list, mapping: dict, nxt: int, prefix: list):
        if not remaining:
            cand = tuple(prefix)
            if best[0] is None or cand < best[0]:
                best[0], best[1] = cand, dict(mapping)
            return
        forms = [(_min_form(e, mapping, nxt), i) for i, e in enumerate(remaining)]
        low = min(f[0][0] for f in forms)
        if best[0] is not None:
            # lexicographic bound against the incumbent
            k = len(prefix)
            if tuple(prefix) + (low,) > best[0][: k + 1]:
                return
        seen = set()
        for (form, fresh), i in forms:
            if form != low:
                continue
            sig = tuple(fresh)
            # two rules with the same form and the same implied assignment
            # lead to the same subtree
            if (sig, remaining[i]) in seen:
                continue
            seen.add((sig, remaining[i]))
            m2 = dict(mapping)
            m2.update(fresh)
            rec(remaining[:i] + remaining[i + 1 :], m2, nxt + len(fresh), prefix + [form])

    rec(sorted(enc), {START: START}, 1, [])
    return best[0] or (), best[1] or {START: START}


@lru_cache(maxsize=200_000)
def _canonical_cached(core: tuple, pos: tuple) -> tuple[tuple, tuple]:
    enc, mapping = _canonical_search(_encode(core, pos))
    return enc, tuple(sorted(mapping.items()))


def canonical_key(core: Sequence[CoreRule], pos: Sequence[PosRule] = ()) -> tuple:
    return _canonical_cached(tuple(sorted(core)), tuple(sorted(pos)))[0]


def canonical_mapping(core: Sequence[CoreRule], pos: Sequence[PosRule] = ()) -> dict[int, int]:
    """The old -> new nonterminal renaming that canonicalize applies."""
    return dict(_canonical_cached(tuple(sorted(core)), tuple(sorted(pos)))[1])


def canonicalize(g):
    """Rename nonterminals to the canonical representative of the isomorphism class.

    The canonical form is the lexicographically smallest sorted rule list over
    all renamings of the non-start nonterminals, so isomorphic inputs map to
    identical outputs and the operation is idempotent.

    >>> str(canonicalize(Vertex(((0, 7), (7, 9, 2)))))
    '{S -> X1, X1 -> X2 X3}'
    """
    if isinstance(g, Vertex):
        core, _ = _decode(canonical_key(g.rules, ()))
        return Vertex(core)
    if isinstance(g, Grammar):
        for r in g.core:
            check_core_rule(r)
        core, pos = _decode(canonical_key(g.core, g.pos))
        return Grammar(core, pos, g.alphabet)
    raise TypeError(f"cannot canonicalize {type(g).__name__}")


def rename(g: Grammar, mapping: dict[int, int]) -> Grammar:
    core = []
    for r in g.core:
        core.append(tuple(mapping.get(x, x) for x in r))
    pos = [(mapping.get(x, x), p) for x, p in g.pos]
    return Grammar(tuple(core), tuple(pos), g.alphabet)


# --------------------------------------------------------------------------
# adjacency


def adjacent_rules(v: Vertex, max_fresh: int = 1, rooted: bool = False) -> list[CoreRule]:
    """Core rules not in ``v`` that extend it by one lattice edge.

    Operands range over the nonterminals used in ``v`` plus up to
    ``max_fresh`` fresh ones, named ``max_used + 1, max_used + 2`` in order of
    appearance. With ``rooted`` the left-hand side of a binary rule must
    already be used, so every new rule hangs off the existing structure.
    """
    used = sorted(v.nonterminals())
    top = max(used, default=0)
    fresh = list(range(top + 1, top + 1 + max_fresh))
    out = set()

    def operands(seq_len: int, avail_fresh: list[int]) -> Iterator[tuple[int, ...]]:
        # fresh symbols must appear in increasing order (canonical fresh naming)
        def rec(prefix, n_fresh):
            if len(prefix) == seq_len:
                yield tuple(prefix)
                return
            for x in used:
                yield from rec(prefix + [x], n_fresh)
            for j in range(min(n_fresh + 1, len(avail_fresh))):
                yield from rec(prefix + [avail_fresh[j]], max(n_fresh, j + 1))

        yield from rec([], 0)

    for (x,) in operands(1, fresh):
        out.add((START, x))
    if rooted:
        for a in used:
            for b, c in operands(2, fresh):
                out.add((a, b, c))
    else:
        for a, b, c in operands(3, fresh):
            out.add((a, b, c))
    out.difference_update(v.rules)
    return sorted(out)


def adjacents(v: Vertex, max_fresh: int = 1, rooted: bool = False) -> list[Vertex]:
    """Canonical, duplicate-free neighbours of ``v``."""
    seen = {}
    for r in adjacent_rules(v, max_fresh, rooted):
        u = canonicalize(v.with_rule(r))
        seen.setdefault(u.rules, u)
    return [seen[k] for k in sorted(seen)]


# --------------------------------------------------------------------------
# text format

_RULE_RE = re.compile(r"^\s*(\S+)\s*->\s*(.+?)\s*$")


def parse_grammar(text: str, alphabet: Iterable[str] | None = None) -> Grammar:
    """Read the one-rule-per-line grammar format.

    Symbols listed on a ``%pos`` header line are POS symbols; without a header
    any symbol that never occurs on a left-hand side is taken to be one.
    ``S`` is the start symbol; other nonterminal names are numbered by first
    appearance. ``A -> B C | D`` alternations are accepted.
    """
    declared = list(alphabet) if alphabet is not None else None
    raw = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("%pos"):
            declared = (declared or []) + line.split()[1:]
            continue
        m = _RULE_RE.match(line)
        if not m:
            raise GrammarError(f"line {lineno}: cannot parse {line!r}")
        lhs = m.group(1)
        for alt in m.group(2).split("|"):
            rhs = alt.split()
            if not rhs or len(rhs) > 2:
                raise GrammarError(f"line {lineno}: rules need one or two right-hand symbols")
            raw.append((lineno, lhs, rhs))
    lhs_names = {lhs for _, lhs, _ in raw}
    if declared is None:
        pos_names = {s for _, _, rhs in raw for s in rhs if s not in lhs_names}
    else:
        pos_names = set(declared)
        clash = pos_names & lhs_names
        if clash:
            raise GrammarError(f"POS symbols used as left-hand sides: {sorted(clash)}")
    ids = {"S": START}

    def nt(name: str, lineno: int) -> int:
        if name in pos_names:
            raise GrammarError(f"line {lineno}: POS symbol {name} used as a nonterminal")
        if name not in ids:
            ids[name] = len(ids)
        return ids[name]

    core, pos = [], []
    for lineno, lhs, rhs in raw:
        a = nt(lhs, lineno)
        if len(rhs) == 1 and rhs[0] in pos_names:
            if a == START:
                raise GrammarError(f"line {lineno}: S cannot take a POS assignment")
            pos.append((a, rhs[0]))
        elif len(rhs) == 1:
            if a != START:
                raise GrammarError(f"line {lineno}: unit rules are only allowed as S -> X")
            core.append((START, nt(rhs[0], lineno)))
        else:
            b, c = (nt(s, lineno) for s in rhs)
            if a == START:
                raise GrammarError(f"line {lineno}: S must expand through a unary rule")
            core.append((a, b, c))
    for r in core:
        check_core_rule(r)
    alpha = tuple(declared) if declared is not None else tuple(sorted(pos_names))
    return Grammar(tuple(core), tuple(pos), alpha)


def load_grammar(path) -> Grammar:
    with open(path, encoding="utf-8") as fh:
        return parse_grammar(fh.read())
