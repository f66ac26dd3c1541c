"""Basic strings, grammar shape vectors and subtree counts.

A derivation is *basic* when no pump is applied more than once. On a
root-to-leaf path that means:

* every nonterminal occurs at most twice, and
* once some nonterminal has repeated on the path (we are inside a
  recursion), a nonterminal first seen below that point may not repeat.

The second clause stops nested recursions from stacking a second pump
inside the first one. Path state is tracked as three bitmasks: labels seen
once before any repeat (``outer``), labels seen once after a repeat
(``inner``) and labels already seen twice (``twice``).
"""
from __future__ import annotations

import sys
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

from .grammar import START, Grammar, is_unary

PathState = tuple  # (outer, inner, twice)
ROOT_STATE: PathState = (1 << START, 0, 0)


def enter(state: PathState, n: int) -> Optional[PathState]:
    """Path state after descending into nonterminal ``n``; None if not basic."""
    outer, inner, twice = state
    bit = 1 << n
    if twice & bit or inner & bit:
        return None
    if outer & bit:
        return (outer & ~bit, inner, twice | bit)
    if twice:
        return (outer, inner | bit, twice)
    return (outer | bit, inner, twice)


def path_is_basic(labels: Iterable[int]) -> bool:
    """Direct check of the basic criterion on an explicit label path."""
    state = (0, 0, 0)
    for n in labels:
        state = enter(state, n)
        if state is None:
            return False
    return True


@dataclass(frozen=True)
class ShapeVector:
    """Counts indexed by string length; index 0 is always zero."""

    counts: tuple = ()
    role: str = "GS"

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        while counts and counts[-1] == 0:
            counts = counts[:-1]
        if any(c < 0 for c in counts):
            raise ValueError("shape vector counts must be non-negative")
        if counts and counts[0]:
            raise ValueError("there are no strings of length 0")
        object.__setattr__(self, "counts", counts)

    @classmethod
    def from_lengths(cls, lengths: Iterable[int], role: str = "GS") -> "ShapeVector":
        out: list[int] = []
        for n in lengths:
            if n >= len(out):
                out.extend([0] * (n + 1 - len(out)))
            out[n] += 1
        return cls(tuple(out), role)

    def __getitem__(self, i: int) -> int:
        return self.counts[i] if 0 <= i < len(self.counts) else 0

    def __len__(self) -> int:
        return len(self.counts)

    @property
    def total(self) -> int:
        return sum(self.counts)

    def dominated_by(self, other: "ShapeVector") -> bool:
        n = max(len(self), len(other))
        return all(self[i] <= other[i] for i in range(n))

    def to_list(self) -> list[int]:
        return list(self.counts)

    def __add__(self, other: "ShapeVector") -> "ShapeVector":
        n = max(len(self), len(other))
        return ShapeVector(tuple(self[i] + other[i] for i in range(n)), self.role)


class ShapeOverflow(Exception):
    """Raised when a basic-string set grows past the caller's limit."""


class _Index:
    """Rule lookup tables for one grammar."""

    def __init__(self, g: Grammar):
        self.binary: dict[int, list[tuple[int, int]]] = {}
        self.unary: list[int] = []
        self.pos: dict[int, list[str]] = {}
        for r in g.core:
            if is_unary(r):
                self.unary.append(r[1])
            else:
                self.binary.setdefault(r[0], []).append((r[1], r[2]))
        for x, p in g.pos:
            self.pos.setdefault(x, []).append(p)
        for v in self.pos.values():
            v.sort()


def _productive(ix: _Index):
    """Memoized test: does (nt, state) derive at least one basic string?"""

    @lru_cache(maxsize=None)
    def ok(n: int, st: PathState) -> bool:
        if ix.pos.get(n):
            return True
        for b, c in ix.binary.get(n, ()):
            sb, sc = enter(st, b), enter(st, c)
            if sb is not None and sc is not None and ok(b, sb) and ok(c, sc):
                return True
        return False

    return ok


def basic_string_set(g: Grammar, limit: Optional[int] = None) -> frozenset:
    """All distinct basic strings of ``g`` as tuples of POS names.

    With ``limit`` set, raises ShapeOverflow as soon as some reachable,
    productive subderivation already has more than ``limit`` distinct
    yields. Every such yield extends to a distinct full string, so the
    final set would exceed the limit too.
    """
    ix = _Index(g)
    ok = _productive(ix)
    memo: dict = {}

    def strings(n: int, st: PathState) -> frozenset:
        key = (n, st)
        got = memo.get(key)
        if got is not None:
            return got
        out = {(p,) for p in ix.pos.get(n, ())}
        for b, c in ix.binary.get(n, ()):
            sb, sc = enter(st, b), enter(st, c)
            if sb is None or sc is None or not ok(b, sb) or not ok(c, sc):
                continue
            left = strings(b, sb)
            right = strings(c, sc)
            if limit is not None and len(left) * len(right) + len(out) > limit:
                # cheap bound failed; build and check exactly
                for u in left:
                    for w in right:
                        out.add(u + w)
                    if len(out) > limit:
                        raise ShapeOverflow(len(out))
            else:
                out.update(u + w for u in left for w in right)
        res = frozenset(out)
        memo[key] = res
        return res

    result: set = set()
    for x in ix.unary:
        st = enter(ROOT_STATE, x)
        if st is not None and ok(x, st):
            result |= strings(x, st)
            if limit is not None and len(result) > limit:
                raise ShapeOverflow(len(result))
    return frozenset(result)


def grammar_shape(g: Grammar, limit: Optional[int] = None) -> ShapeVector:
    """GS(g): number of distinct basic strings per length."""
    return ShapeVector.from_lengths((len(s) for s in basic_string_set(g, limit)), "GS")


def enumerate_basic_strings(g: Grammar) -> frozenset:
    """Basic strings by explicit leftmost top-down expansion.

    Independent of the set DP in ``basic_string_set``: sentential forms are
    expanded one leftmost nonterminal at a time, each symbol carrying its
    own path state.
    """
    ix = _Index(g)
    out: set = set()
    stack = []
    for x in ix.unary:
        st = enter(ROOT_STATE, x)
        if st is not None:
            stack.append(((), ((x, st),)))
    seen = set()
    while stack:
        done, pending = stack.pop()
        if not pending:
            out.add(done)
            continue
        if (done, pending) in seen:
            continue
        seen.add((done, pending))
        (n, st), rest = pending[0], pending[1:]
        for p in ix.pos.get(n, ()):
            stack.append((done + (p,), rest))
        for b, c in ix.binary.get(n, ()):
            sb, sc = enter(st, b), enter(st, c)
            if sb is None or sc is None:
                continue
            stack.append((done, ((b, sb), (c, sc)) + rest))
    return frozenset(out)


def strings_by_length(strings: Iterable[tuple]) -> dict[int, list[tuple]]:
    out: dict[int, list[tuple]] = {}
    for s in sorted(strings, key=lambda s: (len(s), s)):
        out.setdefault(len(s), []).append(s)
    return out


def default_height(g: Grammar) -> int:
    return 2 * (g.n_nonterminals + 1)


def subtree_counts(g: Grammar, n, h: Optional[int] = None, memo: bool = True) -> list[int]:
    """Number of basic derivation trees rooted at ``n`` by yield length.

    ``n`` is a nonterminal id or a core rule. Height counts edges, with a
    POS leaf one edge below its preterminal, and trees taller than ``h``
    are excluded. Entry ``i`` of the result counts trees with yield length
    ``i``; the basic path criterion applies from the root down.
    """
    if h is None:
        h = default_height(g)
    if h < 0:
        raise ValueError("height must be non-negative")
    ix = _Index(g)
    table: dict = {}

    def add_into(acc: list[int], vec: list[int]) -> None:
        if len(vec) > len(acc):
            acc.extend([0] * (len(vec) - len(acc)))
        for i, c in enumerate(vec):
            acc[i] += c

    def conv(a: list[int], b: list[int]) -> list[int]:
        if not a or not b:
            return []
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        return out

    def rule_counts(a: int, b: int, c: int, st: PathState, k: int) -> list[int]:
        sb, sc = enter(st, b), enter(st, c)
        if sb is None or sc is None or k < 2:
            return []
        return conv(nt_counts(b, sb, k - 1), nt_counts(c, sc, k - 1))

    def nt_counts(x: int, st: PathState, k: int) -> list[int]:
        key = (x, st, k)
        if memo and key in table:
            return table[key]
        acc: list[int] = []
        if k >= 1 and ix.pos.get(x):
            add_into(acc, [0, len(ix.pos[x])])
        for b, c in ix.binary.get(x, ()):
            add_into(acc, rule_counts(x, b, c, st, k))
        if memo:
            table[key] = acc
        return acc

    def start_counts(k: int) -> list[int]:
        acc: list[int] = []
        for x in ix.unary:
            st = enter(ROOT_STATE, x)
            if st is not None and k >= 1:
                add_into(acc, nt_counts(x, st, k - 1))
        return acc

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 10_000))
    try:
        if isinstance(n, tuple):
            if is_unary(n):
                st = enter(ROOT_STATE, n[1])
                res = nt_counts(n[1], st, h - 1) if st is not None and h >= 1 else []
            else:
                a, b, c = n
                st = enter(ROOT_STATE, a) if a != START else ROOT_STATE
                res = rule_counts(a, b, c, st, h) if st is not None else []
        elif n == START:
            res = start_counts(h)
        else:
            st = enter(ROOT_STATE, n)
            res = nt_counts(n, st, h) if st is not None else []
    finally:
        sys.setrecursionlimit(old)
    while res and res[-1] == 0:
        res = res[:-1]
    return list(res) if res else [0]
