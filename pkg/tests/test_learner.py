import itertools
from fractions import Fraction

import pytest

from pumpgram.corpus import fair_basic_text
from pumpgram.earley import parse
from pumpgram.grammar import Grammar, Vertex, canonical_key, canonicalize, load_grammar
from pumpgram.learner import (
    Learner,
    MetaParams,
    OptimalSet,
    Optimum,
    ResourceCapExceeded,
    is_mk_incremental_witness,
    learn,
    max_fit_next,
    unproductive_rules,
)
from pumpgram.fitness import Fitness
from pumpgram.shape import ShapeVector, basic_string_set

TOY = Vertex(((0, 1), (1, 2, 3)))


@pytest.fixture(scope="module")
def palindrome_run():
    g = load_grammar(_fixture("palindrome_even"))
    corpus = fair_basic_text(g)
    return g, corpus, learn(corpus, MetaParams(m=2, k=1, stop="accumulate"))


def _fixture(name):
    from conftest import FIXTURES

    return FIXTURES / f"{name}.cfg"


def test_single_sentence_worked_example():
    res = learn([("PN", "V0")], MetaParams(m=2, k=1, stop="first"))
    assert len(res.global_optima()) == 1
    o = res.global_optima()[0]
    assert o.depth == 2 and o.fitness.value == 1
    c = canonicalize(o.grammar)
    assert c.core == ((0, 1), (1, 2, 3))
    assert set(c.pos) == {(2, "PN"), (3, "V0")}


def test_max_fit_next_top_candidate(english_learned):
    corpus = fair_basic_text(english_learned)
    cands = max_fit_next(TOY, corpus)
    assert {(2, "PN"), (3, "V0")} <= cands[0][0]
    assert max_fit_next(Vertex(), corpus) == []


def test_max_fit_next_against_subset_search():
    core = Vertex(((0, 1), (1, 2, 3), (3, 2, 3)))
    corpus = [("a", "b", "b"), ("b", "a", "a")]
    pool = sorted({(x, p) for x in (1, 2, 3) for p in "ab"})
    best = 0
    for size in range(1, 7):
        for sub in itertools.combinations(pool, size):
            g = Grammar(core.rules, sub, ("a", "b"))
            best = max(best, sum(parse(g, s).accepted for s in corpus))
    cands = max_fit_next(core, corpus, t=0)
    assert len(cands[0][1]) == best
    for pos, parsed in cands:
        g = Grammar(core.rules, tuple(pos), ("a", "b"))
        assert all(parse(g, corpus[i]).accepted for i in parsed)


def test_unproductive_rule_examples():
    g = Grammar(TOY.rules, ((2, "PN"), (3, "V0")), ("PN", "V0"))
    optima = OptimalSet(corpus_size=1)
    optima.add(Optimum(g, Fitness(1, 1), 2, frozenset({0}), ShapeVector((0, 0, 1)), ShapeVector((0, 0, 1), "ES"), None, canonical_key(TOY.rules)))
    idle = TOY.with_rule((2, 2, 3))
    assert unproductive_rules(idle, optima, frozenset({0})) == {(2, 2, 3)}
    assert unproductive_rules(TOY, optima, frozenset({0})) == set()
    # a rule is only unproductive if the smaller optimum parsed the same sentences
    assert unproductive_rules(idle, optima, frozenset({0, 1})) == set()


def test_weakly_equivalent_palindrome_grammar(palindrome_run):
    g, corpus, res = palindrome_run
    target = basic_string_set(g)
    assert any(basic_string_set(o.grammar) == target for o in res.global_optima())


def test_optima_lie_on_nonincreasing_paths(palindrome_run):
    _, _, res = palindrome_run
    by_key = {}
    for o in res.optima:
        by_key.setdefault(o.key, []).append(o)
    for o in res.optima:
        assert o.fitness.value >= 1
        if o.predecessor is not None:
            preds = by_key[o.predecessor]
            assert any(p.fitness.value >= o.fitness.value and p.parsed < o.parsed for p in preds)


def test_predecessor_chain_is_incremental_witness(palindrome_run):
    _, _, res = palindrome_run
    by_key = {o.key: o for o in res.optima}
    o = res.global_optima()[0]
    chain = [o]
    while chain[-1].predecessor is not None:
        chain.append(by_key[chain[-1].predecessor])
    chain.reverse()
    seq = [c.grammar for c in chain]
    assert is_mk_incremental_witness(seq, m=len(seq[0].core), k=1)
    assert not is_mk_incremental_witness(seq, m=len(seq[0].core) + 1, k=1)


def test_witness_cardinality_clauses():
    a = Grammar(TOY.rules, ((2, "PN"), (3, "V0")), ("PN", "V0"))
    b = Grammar(TOY.rules + ((3, 4, 3), (4, 4, 4)), a.pos + ((4, "V0"),), ("PN", "V0"))
    assert is_mk_incremental_witness([a], 2, 1)
    assert not is_mk_incremental_witness([a], 3, 1)
    assert not is_mk_incremental_witness([a, b], 2, 1)
    with pytest.raises(ValueError):
        is_mk_incremental_witness([a, Grammar(TOY.rules, a.pos, ("PN", "V0", "X"))], 2, 1)


def test_runs_are_deterministic(fixture_path):
    corpus = fair_basic_text(load_grammar(fixture_path("palindrome_even")))
    a = learn(corpus, MetaParams(k=1))
    b = learn(corpus, MetaParams(k=1))
    assert [(o.key, o.parsed, o.grammar) for o in a.optima] == [(o.key, o.parsed, o.grammar) for o in b.optima]
    assert a.growth == b.growth


class CheckedLearner(Learner):
    def _evaluate(self, st, allowed):
        assert not self.banned.exists_subset(st.vertex.rules), st.vertex
        return super()._evaluate(st, allowed)


@pytest.mark.parametrize("k", [1, 2])
def test_no_banned_superset_is_evaluated(fixture_path, k):
    corpus = fair_basic_text(load_grammar(fixture_path("palindrome_even")))
    CheckedLearner(corpus, MetaParams(k=k, stop="first", max_depth=8)).run()


def test_gain_filter_does_not_change_optima(fixture_path):
    corpus = fair_basic_text(load_grammar(fixture_path("palindrome_even")))
    fast = learn(corpus, MetaParams(k=1, gain_filter=True))
    slow = learn(corpus, MetaParams(k=1, gain_filter=False))
    assert {(o.key, o.parsed) for o in fast.optima} == {(o.key, o.parsed) for o in slow.optima}


def test_resource_caps_carry_partial_result(english_learned):
    corpus = fair_basic_text(english_learned)
    with pytest.raises(ResourceCapExceeded) as exc:
        learn(corpus, MetaParams(k=1, max_frontier=3))
    assert exc.value.partial.stopped_by == "max-frontier"
    assert exc.value.partial.growth[0].visited == 1
    with pytest.raises(ResourceCapExceeded) as exc:
        learn(corpus, MetaParams(k=1, max_depth=2))
    assert exc.value.partial.stopped_by == "max-depth"


def test_exhaust_stops_at_horizon(fixture_path):
    corpus = fair_basic_text(load_grammar(fixture_path("palindrome_even")))
    res = learn(corpus, MetaParams(k=1, stop="exhaust", max_depth=4))
    assert res.stopped_by == "depth-horizon"
    assert max(res.growth) <= 5


@pytest.mark.parametrize(
    "kw", [dict(m=0), dict(k=0), dict(t=Fraction(3, 2)), dict(stop="never")]
)
def test_meta_param_validation(kw):
    with pytest.raises(ValueError):
        MetaParams(**kw)


def test_threshold_accepts_strings():
    assert MetaParams(t="49/51").t == Fraction(49, 51)
