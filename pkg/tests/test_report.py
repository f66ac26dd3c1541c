import json

from pumpgram.corpus import fair_basic_text
from pumpgram.grammar import load_grammar
from pumpgram.lattice import layer_counts
from pumpgram.learner import MetaParams, learn
from pumpgram.report import build_report, dumps_report, growth_csv, growth_rows


def test_layer_counts_small_depths():
    counts = layer_counts(3)
    assert [counts.total(d) for d in range(4)] == [1, 1, 6, 102]
    assert counts.total(4) is None
    assert counts.at_least(7) == 102


def test_layer_counts_respects_budget():
    counts = layer_counts(4, budget_vertices=50)
    assert counts.complete_to == 2 and counts.total(3) is None
    assert counts.at_least(3) == 6


def test_report_fields(fixture_path):
    corpus = fair_basic_text(load_grammar(fixture_path("palindrome_even")))
    params = MetaParams(k=1, stop="first")
    res = learn(corpus, params)
    rep = build_report(res, params, corpus, layer_counts(2), seed=1)
    assert rep["params"]["k"] == 1 and rep["params"]["t"] == "1"
    assert rep["global_optima"] == sum(o["global"] for o in rep["optima"])
    opt = rep["optima"][0]
    assert opt["grammar"][0] == "S -> X1"
    assert opt["fitness"] == "1"
    assert opt["es"] == opt["gs"]
    rows = growth_rows(res, layer_counts(2))
    assert rows[0]["total"] == 1 and rows[-1]["total"] == "-"
    assert json.loads(dumps_report(rep)) == rep
    assert growth_csv(res).splitlines()[0] == "depth,total,visited,optimal"
