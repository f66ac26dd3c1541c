"""Branch-and-bound breadth-first search over the rule lattice.

The learner walks from the empty rule set, one core rule per step. A vertex
is scored by pairing its core rules with POS assignments found in wildcard
mode and measuring fitness on the corpus. Vertices that cannot lead to an
optimum within ``k`` steps are banned together with all their supersets.

Search states carry a *working* naming of nonterminals that extends the
naming of their ancestors, so banned-subset tests compare rule sets
literally along a path. Deduplication across paths uses canonical keys.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .earley import wildcard_parse
from .fitness import Fitness, as_fraction, is_optimal
from .grammar import START, Grammar, Vertex, adjacent_rules, canonical_key, canonicalize, is_unary
from .prefix_tree import BannedPrefixTree
from .shape import ShapeOverflow, ShapeVector, basic_string_set

log = logging.getLogger(__name__)

CANDIDATE_CAP = 64


class ResourceCapExceeded(RuntimeError):
    """The frontier or depth cap was hit; ``partial`` holds what was found."""

    def __init__(self, message: str, partial: "OptimalSet"):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class MetaParams:
    m: int = 2
    k: int = 1
    t: Fraction = Fraction(1)
    stop: str = "accumulate"  # or "first", or "exhaust" (run to max_depth)
    max_depth: Optional[int] = None
    max_frontier: Optional[int] = None
    # exactness switches, used by tests to compare pruned and unpruned runs
    gain_filter: bool = True
    interaction_only: bool = False
    max_fresh: int = 2
    # multi-rule steps must grow one connected constituent (see _step_rules)
    linked_steps: bool = False

    def __post_init__(self):
        object.__setattr__(self, "t", as_fraction(self.t))
        if self.m < 1 or self.k < 1:
            raise ValueError("m and k must be at least 1")
        if not 0 <= self.t <= 1:
            raise ValueError("t must lie in [0, 1]")
        if self.stop not in ("first", "accumulate", "exhaust"):
            raise ValueError(f"unknown stop criterion {self.stop!r}")


@dataclass
class SearchState:
    vertex: Vertex
    d: int  # steps since the last optimum on this path
    pred_fitness: Optional[Fraction]  # fitness of that optimum (None before one)
    parsed: frozenset  # corpus indices parsed at that optimum
    base: frozenset  # POS rules of that optimum
    anchor: Optional[tuple] = None  # canonical key of that optimum
    added: tuple = ()  # rules added since that optimum


@dataclass(frozen=True)
class Optimum:
    grammar: Grammar
    fitness: Fitness
    depth: int
    parsed: frozenset
    gs: ShapeVector
    es: ShapeVector
    predecessor: Optional[tuple]  # canonical key of the optimal ancestor
    key: tuple = ()


@dataclass
class GrowthRecord:
    depth: int
    visited: int = 0
    optimal: int = 0
    evaluated: int = 0
    filtered: int = 0
    total: Optional[int] = None


@dataclass
class OptimalSet:
    corpus_size: int = 0
    optima: list = field(default_factory=list)
    growth: dict = field(default_factory=dict)
    by_key: dict = field(default_factory=dict)  # canonical vertex key -> list of parsed sets
    stopped_by: str = ""
    elapsed: float = 0.0

    def add(self, o: Optimum) -> None:
        self.optima.append(o)
        self.by_key.setdefault(o.key, []).append(o.parsed)

    def global_optima(self) -> list:
        full = frozenset(range(self.corpus_size))
        return [o for o in self.optima if o.parsed == full]

    def growth_rows(self) -> list:
        return [self.growth[d] for d in sorted(self.growth)]

    def record(self, depth: int) -> GrowthRecord:
        rec = self.growth.get(depth)
        if rec is None:
            rec = self.growth[depth] = GrowthRecord(depth)
        return rec

    def __len__(self) -> int:
        return len(self.optima)


# --------------------------------------------------------------------------
# feasibility and candidates


class Feasibility:
    """Basic-string bookkeeping against one corpus and threshold.

    A grammar can only reach fitness t when t * |B \\ D| <= (1 - t) * |D|.
    Adding rules never removes basic strings, so a grammar failing this
    test fails it forever.
    """

    def __init__(self, corpus: Sequence[tuple], t: Fraction):
        self.data = frozenset(corpus)
        self.t = t
        self.limit = None if t == 0 else int(len(self.data) / t)
        self._cache: dict = {}

    def basic(self, core: Iterable, pos: Iterable) -> Optional[frozenset]:
        """Basic set of the grammar, or None when it is already infeasible."""
        key = (frozenset(core), frozenset(pos))
        if key in self._cache:
            return self._cache[key]
        try:
            b = basic_string_set(Grammar(tuple(key[0]), tuple(key[1])), self.limit)
        except ShapeOverflow:
            b = None
        if b is not None and not self.ok(b):
            b = None
        if len(self._cache) > 200_000:
            self._cache.clear()
        self._cache[key] = b
        return b

    def ok(self, basic: frozenset) -> bool:
        unseen = sum(1 for s in basic if s not in self.data)
        if self.t == 1:
            return unseen == 0
        return self.t * unseen <= (1 - self.t) * len(self.data)


def _serial(pos_rules: Iterable) -> tuple:
    return tuple(sorted(pos_rules))


def max_fit_next(
    v: Vertex,
    corpus: Sequence[tuple],
    base: Iterable = (),
    t=1,
    allowed: Optional[Callable] = None,
    skip: Iterable[int] = (),
    feasibility: Optional[Feasibility] = None,
    cap: int = CANDIDATE_CAP,
) -> list[tuple[frozenset, frozenset]]:
    """Candidate POS-rule sets for ``v``, best first.

    Per-sentence minimal satisfactions are merged greedily in corpus order,
    which is sorted by length. A sentence with several satisfactions forks
    the candidate. When a sentence cannot be merged (no parse, or every
    merge would push the basic strings past the fitness threshold) the
    candidate keeps going through sentences of that same length but takes
    no longer ones, so parsed sets never skip a shorter sentence. Returns
    pairs of (POS rule set, parsed corpus indices) ordered by number parsed,
    then by serialized rules. ``skip`` lists sentences known to parse.
    """
    if not v.rules:
        return []
    feas = feasibility or Feasibility(corpus, as_fraction(t))
    base = frozenset(base)
    skip = frozenset(skip)
    core = v.rules
    if feas.basic(core, base) is None:
        return []
    # (pos rules, parsed indices, length of the first sentence left out)
    cands = [(base, frozenset(skip), None)]
    for i, s in enumerate(corpus):
        if i in skip:
            continue
        n = len(s)
        if all(b is not None and n > b for _, _, b in cands):
            break
        sats = wildcard_parse(v, s, base=base, allowed=allowed)
        nxt = []
        for c, parsed, blocked in cands:
            if blocked is not None and n > blocked:
                nxt.append((c, parsed, blocked))
                continue
            if any(x <= c for x in sats):
                nxt.append((c, parsed | {i}, blocked))
                continue
            forks = [c | x for x in sats if feas.basic(core, c | x) is not None]
            if forks:
                nxt.extend((u, parsed | {i}, blocked) for u in forks)
            else:
                nxt.append((c, parsed, n if blocked is None else blocked))
        uniq = {}
        for c, parsed, blocked in nxt:
            key = _serial(c)
            if key not in uniq:
                uniq[key] = (c, parsed, blocked)
        cands = sorted(uniq.values(), key=lambda x: (-len(x[1]), _serial(x[0])))[:cap]
    out = [(c, parsed) for c, parsed, _ in cands]
    out.sort(key=lambda cp: (-len(cp[1]), _serial(cp[0])))
    return out


# --------------------------------------------------------------------------
# gain filter


class GainChart:
    """Substring charts of the sentences an optimum does not yet parse.

    ``chart[i][j]`` is a bitmask of nonterminals that can derive tokens
    ``i..j-1`` in wildcard mode, using the optimum's core rules, its POS
    rules, the assignments known to be safe, and any POS for nonterminals
    the optimum does not use. Adding rules can only add entries, so the
    charts answer "could these extra rules parse a new sentence" exactly
    for this wildcard relaxation, which makes the test a necessary
    condition for a parse gain.
    """

    def __init__(self, core: Sequence, leaf: Callable, sentences: Sequence[tuple], n_fresh: int, top: int):
        self.core = tuple(core)
        self.sentences = list(sentences)
        self.fresh = tuple(range(top + 1, top + 1 + n_fresh))
        fresh_mask = 0
        for f in self.fresh:
            fresh_mask |= 1 << f
        self.charts = []
        for s in self.sentences:
            n = len(s)
            chart = [[0] * (n + 1) for _ in range(n + 1)]
            for i, tok in enumerate(s):
                chart[i][i + 1] = leaf(tok) | fresh_mask
            self._close(chart, self.core, None)
            self.charts.append(chart)
        self.unary = [r[1] for r in self.core if is_unary(r)]

    @staticmethod
    def _close(chart, rules, seeds) -> None:
        """Add every entry derivable with ``rules``.

        With ``seeds`` None the chart is built bottom-up; otherwise only the
        consequences of the rules in ``seeds`` are propagated.
        """
        n = len(chart) - 1
        binary = [r for r in rules if not is_unary(r)]
        if seeds is None:
            for width in range(2, n + 1):
                for i in range(n - width + 1):
                    j = i + width
                    acc = chart[i][j]
                    for m in range(i + 1, j):
                        left, right = chart[i][m], chart[m][j]
                        if not left or not right:
                            continue
                        for a, b, c in binary:
                            if left >> b & 1 and right >> c & 1:
                                acc |= 1 << a
                    chart[i][j] = acc
            return
        by_left, by_right = GainChart._index(binary)
        agenda = []
        for a, b, c in seeds:
            bit_a = 1 << a
            for i in range(n):
                for m in range(i + 1, n):
                    if not chart[i][m] >> b & 1:
                        continue
                    row = chart[m]
                    for j in range(m + 1, n + 1):
                        if row[j] >> c & 1 and not chart[i][j] & bit_a:
                            chart[i][j] |= bit_a
                            agenda.append((a, i, j))
        GainChart._propagate(chart, by_left, by_right, agenda)

    @staticmethod
    def _index(binary) -> tuple[dict, dict]:
        by_left: dict = {}
        by_right: dict = {}
        for a, b, c in binary:
            by_left.setdefault(b, []).append((a, c))
            by_right.setdefault(c, []).append((a, b))
        return by_left, by_right

    @staticmethod
    def _propagate(chart, by_left, by_right, agenda) -> None:
        n = len(chart) - 1
        while agenda:
            x, i, j = agenda.pop()
            for a, c in by_left.get(x, ()):
                bit_a = 1 << a
                row = chart[j]
                for m in range(j + 1, n + 1):
                    if row[m] >> c & 1 and not chart[i][m] & bit_a:
                        chart[i][m] |= bit_a
                        agenda.append((a, i, m))
            for a, b in by_right.get(x, ()):
                bit_a = 1 << a
                for m in range(i):
                    if chart[m][i] >> b & 1 and not chart[m][j] & bit_a:
                        chart[m][j] |= bit_a
                        agenda.append((a, m, j))

    def extend(self, rules: Sequence) -> "GainChart":
        """Charts for the optimum plus ``rules`` (used for multi-step paths)."""
        new = object.__new__(GainChart)
        new.core = self.core + tuple(rules)
        new.sentences = self.sentences
        new.fresh = self.fresh
        new.unary = self.unary + [r[1] for r in rules if is_unary(r)]
        seeds = [r for r in rules if not is_unary(r)]
        new.charts = []
        for chart in self.charts:
            if seeds and any(self._fires(chart, r) for r in seeds):
                c2 = [row[:] for row in chart]
                self._close(c2, new.core, seeds)
                new.charts.append(c2)
            else:
                new.charts.append(chart)
        return new

    @staticmethod
    def _fires(chart, rule) -> bool:
        _, b, c = rule
        n = len(chart) - 1
        for m in range(1, n):
            if any(chart[i][m] >> b & 1 for i in range(m)) and any(chart[m][j] >> c & 1 for j in range(m + 1, n + 1)):
                return True
        return False

    def gains(self, rule) -> bool:
        """Whether adding ``rule`` lets some pending sentence reach S."""
        if is_unary(rule):
            x = rule[1]
            return any(chart[0][len(chart) - 1] >> x & 1 for chart in self.charts)
        for chart in self.charts:
            if not self._fires(chart, rule):
                continue
            c2 = [row[:] for row in chart]
            self._close(c2, self.core + (rule,), [rule])
            top = c2[0][len(c2) - 1]
            if any(top >> x & 1 for x in self.unary):
                return True
        return False

    def pending_gain(self) -> bool:
        return any(any(chart[0][len(chart) - 1] >> x & 1 for x in self.unary) for chart in self.charts)

    def gain_with_wild(self, wild: Iterable[int]) -> bool:
        """Whether a pending sentence reaches S if the ``wild`` symbols derive every span.

        This over-approximates anything that further rules defining those
        symbols could contribute.
        """
        wild = tuple(wild)
        if self.pending_gain():
            return True
        if not wild:
            return False
        by_left, by_right = self._index([r for r in self.core if not is_unary(r)])
        for chart in self.charts:
            n = len(chart) - 1
            c2 = [row[:] for row in chart]
            agenda = []
            for x in wild:
                bit = 1 << x
                for i in range(n):
                    for j in range(i + 1, n + 1):
                        if not c2[i][j] & bit:
                            c2[i][j] |= bit
                            agenda.append((x, i, j))
            self._propagate(c2, by_left, by_right, agenda)
            top = c2[0][n]
            if any(top >> x & 1 for x in self.unary):
                return True
        return False


# --------------------------------------------------------------------------
# learner


def unproductive_rules(v: Vertex, optima: OptimalSet, parsed: frozenset) -> set:
    """Rules r of v such that the optimum v minus r parses the same sentences."""
    out = set()
    for r in v.rules:
        key = canonical_key(v.without(r).rules)
        for p in optima.by_key.get(key, ()):
            if p == parsed:
                out.add(r)
                break
    return out


class Learner:
    def __init__(self, corpus: Sequence[Sequence[str]], params: MetaParams):
        uniq = sorted({tuple(s) for s in corpus}, key=lambda s: (len(s), s))
        self.corpus = uniq
        self.params = params
        self.alphabet = sorted({p for s in uniq for p in s})
        self.feas = Feasibility(uniq, params.t)
        self.result = OptimalSet(corpus_size=len(uniq))
        self.banned = BannedPrefixTree()
        # canonical key -> index in the next frontier, or -1 if banned; all
        # vertices of a layer have the same size, so one layer's map suffices
        self._slots: dict = {}
        self._anchor_info: dict = {}
        self.evaluations = 0
        self.banned_hits = 0

    # -- per-optimum context -------------------------------------------------

    def _anchor(self, st: SearchState, anchor_vertex: Vertex):
        """Safe assignments and gain charts for the optimum a state extends."""
        key = st.anchor
        info = self._anchor_info.get(key)
        if info is not None:
            return info
        core = anchor_vertex.rules
        base = st.base
        used = anchor_vertex.nonterminals()
        safe = set(base)
        for x in used:
            for p in self.alphabet:
                if (x, p) in base:
                    continue
                if self.feas.basic(core, base | {(x, p)}) is not None:
                    safe.add((x, p))
        safe = frozenset(safe)
        top = max(used, default=0)

        def allowed(y, tok):
            return y not in used or (y, tok) in safe

        def leaf(tok):
            mask = 0
            for x in used:
                if (x, tok) in safe:
                    mask |= 1 << x
            return mask

        # a new parse must include a pending sentence of the shortest
        # pending length, since parsed sets never skip shorter sentences
        pending = [i for i in range(len(self.corpus)) if i not in st.parsed]
        if pending:
            shortest = len(self.corpus[pending[0]])
            pending = [i for i in pending if len(self.corpus[i]) == shortest]
        chart = None
        if self.params.gain_filter:
            chart = GainChart(core, leaf, [self.corpus[i] for i in pending], 2 * self.params.k * self.params.max_fresh, top)
        info = (safe, allowed, chart)
        if len(self._anchor_info) > 5000:
            self._anchor_info.clear()
        self._anchor_info[key] = info
        return info

    # -- evaluation ----------------------------------------------------------

    def _evaluate(self, st: SearchState, allowed):
        """Best candidate for a vertex: (grammar, fitness, parsed, gs, es) or None."""
        self.evaluations += 1
        cands = max_fit_next(
            st.vertex, self.corpus, base=st.base, allowed=allowed, skip=st.parsed, feasibility=self.feas
        )
        out = []
        for pos, parsed in cands:
            b = self.feas.basic(st.vertex.rules, pos)
            if b is None:
                continue
            es_lengths = [len(s) for s in b if s in self.feas.data]
            gs = ShapeVector.from_lengths((len(s) for s in b), "GS")
            es = ShapeVector.from_lengths(es_lengths, "ES")
            f = Fitness(es.total, gs.total)
            out.append((Grammar(st.vertex.rules, tuple(pos), tuple(self.alphabet)), f, parsed, gs, es))
        return out

    def _is_optimal_candidate(self, st: SearchState, f: Fitness, parsed: frozenset) -> bool:
        if not is_optimal(f, self.params.t, st.pred_fitness):
            return False
        if st.anchor is not None and not parsed > st.parsed:
            return False
        return not unproductive_rules(st.vertex, self.result, parsed)

    # -- main loop -----------------------------------------------------------

    def run(self) -> OptimalSet:
        p = self.params
        t0 = time.time()
        root = SearchState(Vertex(), 0, None, frozenset(), frozenset())
        rec = self.result.record(0)
        rec.visited = 1
        frontier = [root]
        depth = 0
        first_global: Optional[int] = None
        done = 0
        anchors: dict = {}
        while frontier:
            rec = self.result.record(depth)
            nxt: list[SearchState] = []
            self._slots = {}
            # children of the last layer would never be processed
            last = (p.stop == "exhaust" and p.max_depth is not None and depth >= p.max_depth) or (
                p.stop == "accumulate" and first_global is not None and depth >= first_global + p.k
            )
            for st in frontier:
                self._step(st, depth, rec, nxt, anchors, expand=not last)
            done = depth
            full = self.result.global_optima()
            if full and first_global is None:
                first_global = depth
            depth += 1
            if first_global is not None and p.stop != "exhaust":
                if p.stop == "first":
                    self.result.stopped_by = "first-global-optimum"
                    break
                if depth > first_global + p.k:
                    self.result.stopped_by = "accumulate-window"
                    break
            if p.max_depth is not None and depth > p.max_depth:
                if p.stop == "exhaust":
                    # the depth bound is the horizon of an exhaustive run
                    self.result.stopped_by = "depth-horizon"
                    break
                self.result.stopped_by = "max-depth"
                self.result.elapsed = time.time() - t0
                raise ResourceCapExceeded(f"depth cap {p.max_depth} reached", self.result)
            if p.max_frontier is not None and len(nxt) > p.max_frontier:
                self.result.stopped_by = "max-frontier"
                self.result.elapsed = time.time() - t0
                raise ResourceCapExceeded(f"frontier of {len(nxt)} exceeds cap {p.max_frontier}", self.result)
            nxt.sort(key=lambda s: canonical_key(s.vertex.rules))
            frontier = nxt
            log.info("depth %d: frontier %d, optima %d, evaluations %d", depth, len(frontier), len(self.result), self.evaluations)
        if not self.result.stopped_by:
            self.result.stopped_by = "frontier-exhausted"
        # a layer generated just before a stop was never searched
        for d in [d for d in self.result.growth if d > done]:
            del self.result.growth[d]
        self.result.elapsed = time.time() - t0
        return self.result

    def _step(self, st: SearchState, depth: int, rec: GrowthRecord, nxt: list, anchors: dict, expand: bool = True) -> None:
        p = self.params
        v = st.vertex
        if v.rules and self.banned.exists_subset(v.rules):
            # a subset was banned after this state was queued
            self.banned_hits += 1
            return
        if st.anchor is None:
            allowed, chart = None, None
        else:
            _, allowed, chart = self._anchor(st, anchors[st.anchor])
        # vertices that cannot gain a sentence are not worth a parse
        evaluate = True
        if chart is not None and st.added:
            evaluate = chart.extend(st.added).pending_gain() if len(st.added) > 0 else False
        best = None
        if evaluate:
            rec.evaluated += 1
            for g, f, parsed, gs, es in self._evaluate(st, allowed):
                if self._is_optimal_candidate(st, f, parsed):
                    key = canonical_key(v.rules)
                    opt = Optimum(g, f, depth, parsed, gs, es, st.anchor, key)
                    if best is None:
                        best = opt
                    self.result.add(opt)
                    rec.optimal += 1
                    break  # one optimum per vertex: the best-ranked candidate
        if best is not None:
            anchors[best.key] = v
            if expand:
                state = SearchState(v, 0, best.fitness.value, best.parsed, frozenset(best.grammar.pos), best.key, ())
                self._expand(state, depth, nxt, anchors)
            return
        if not expand:
            return
        if st.anchor is None:
            # before the first optimum on this path
            if len(v) < p.m:
                self._expand(st, depth, nxt, anchors)
            else:
                self.banned.insert(v.rules)
            return
        if st.d >= p.k:
            self.banned.insert(v.rules)
            return
        # non-optimal, d < k: keep walking only while the new rules are
        # unproductive and the vertex can still reach the threshold
        if self.feas.basic(v.rules, st.base) is None:
            self.banned.insert(v.rules)
            return
        self._expand(st, depth, nxt, anchors)

    def _expand(self, st: SearchState, depth: int, nxt: list, anchors: dict) -> None:
        p = self.params
        v = st.vertex
        rec = self.result.record(depth + 1)
        chart = None
        if st.anchor is not None and p.gain_filter:
            _, _, chart = self._anchor(st, anchors[st.anchor])
            if st.added:
                chart = chart.extend(st.added)
        child_d = st.d + 1 if st.anchor is not None else 0
        rules = adjacent_rules(v, max_fresh=p.max_fresh, rooted=True)
        if p.interaction_only and st.added:
            rules = [r for r in rules if _interacts(r, st.added)]
        if p.linked_steps and st.anchor is not None and p.k > 1:
            rules = _step_rules(rules, anchors[st.anchor], st.added)
        for r in rules:
            u = v.with_rule(r)
            if chart is not None and child_d >= p.k and not chart.gains(r):
                # at the last allowed step a child must parse something new
                rec.filtered += 1
                self.banned.insert(u.rules)
                continue
            if chart is not None and p.linked_steps and 0 < child_d < p.k:
                # a rule that leaves the step open must still allow a gain
                # once the symbols the step introduced are defined
                wild = _introduced(anchors[st.anchor], st.added + (r,))
                if not chart.extend((r,)).gain_with_wild(wild):
                    rec.filtered += 1
                    continue
            child = SearchState(u, child_d, st.pred_fitness, st.parsed, st.base, st.anchor, st.added + (r,))
            key = canonical_key(u.rules)
            slot = self._slots.get(key)
            if slot is None:
                rec.visited += 1
            elif slot < 0 or not _roomier(child, nxt[slot]):
                continue
            if self.banned.exists_subset(u.rules):
                self.banned_hits += 1
                if slot is None:
                    self._slots[key] = -1
                continue
            if slot is None:
                self._slots[key] = len(nxt)
                nxt.append(child)
            else:
                nxt[slot] = child


def _roomier(a: SearchState, b: SearchState) -> bool:
    """Whether state ``a`` leaves more of the search open than ``b``.

    The same vertex can be reached along several paths in one layer. The
    path whose last optimum parsed more sentences, and then the one with
    fewer steps since that optimum, keeps the most options.
    """
    return (len(a.parsed), -a.d) > (len(b.parsed), -b.d)


def _introduced(anchor: Vertex, added: Sequence) -> set:
    """Nonterminals the rules of the current step use that the optimum does not."""
    known = anchor.nonterminals()
    return {x for r in added for x in r if x not in known}


def _step_rules(rules: Sequence, anchor: Vertex, added: Sequence) -> list:
    """Rules allowed next inside one multi-rule step.

    The first rule of a step expands a nonterminal the optimum already
    uses; each later rule defines a nonterminal an earlier rule of the step
    introduced, so a step grows one connected constituent (as VP -> V PP
    with PP -> P NP does). Steps whose rules would be used side by side in
    unrelated parts of a parse are not explored, so this is a heuristic
    narrowing of the search rather than an exact pruning.
    """
    if not added:
        known = anchor.nonterminals() | {START}
        return [r for r in rules if r[0] in known]
    intro = _introduced(anchor, added)
    return [r for r in rules if r[0] in intro]


def _interacts(rule, added: Sequence) -> bool:
    """Whether ``rule`` shares a symbol with one of the rules added so far."""
    syms = {x for r in added for x in r if x != START}
    return any(x in syms for x in rule if x != START)


def learn(corpus: Sequence[Sequence[str]], params: MetaParams = MetaParams()) -> OptimalSet:
    """Run the search and return the optimal set with its growth log."""
    return Learner(corpus, params).run()


# --------------------------------------------------------------------------
# incremental classes


def is_mk_incremental_witness(seq: Sequence[Grammar], m: int, k: int) -> bool:
    """Check a grammar sequence against the (m, k)-incremental conditions.

    Sizes count core rules, as lattice distances do: the first grammar has
    m core rules and each step adds at most k. Full rule sets (core and
    POS) must grow by strict inclusion and each language must strictly
    contain the previous one. Languages are compared through their basic
    strings, a finite proxy for full language inclusion.
    """
    if not seq:
        return False
    alph = {tuple(g.alphabet) for g in seq}
    if len(alph) > 1:
        raise ValueError("grammars in a witness sequence must share one alphabet")

    def rules(g: Grammar) -> frozenset:
        return frozenset(g.core) | frozenset(g.pos)

    if len(seq[0].core) != m:
        return False
    for a, b in zip(seq, seq[1:]):
        ra, rb = rules(a), rules(b)
        if not ra < rb or len(b.core) - len(a.core) > k:
            return False
        if not basic_string_set(a) < basic_string_set(b):
            return False
    return True
