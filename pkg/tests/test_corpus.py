import pytest

from pumpgram.corpus import (
    CorpusError,
    Lexicon,
    fair_basic_text,
    format_corpus,
    generate_fair_basic_text,
    load_corpus,
    parse_corpus,
    sort_corpus,
)
from pumpgram.grammar import load_grammar


def test_sort_and_dedupe():
    got = sort_corpus([("b", "a"), ("a",), ("b", "a"), ("a", "a"), ()])
    assert got == [("a",), ("a", "a"), ("b", "a")]


def test_pos_corpus_with_header():
    corpus, alphabet = parse_corpus("%pos PN V0\n# comment\nPN V0\n\nPN V0\n")
    assert corpus == [("PN", "V0")]
    assert alphabet == ["PN", "V0"]


def test_symbol_outside_declared_alphabet():
    with pytest.raises(CorpusError, match="line 2"):
        parse_corpus("%pos PN V0\nPN V9\n")


def test_alphabet_inferred_without_header():
    _, alphabet = parse_corpus("N V\nD N V\n")
    assert alphabet == ["D", "N", "V"]


def test_lexicon_expands_ambiguous_tokens():
    lex = Lexicon.parse("the D\nflies N V0\nfruit N\nsleeps V0\n")
    corpus, alphabet = parse_corpus("the fruit flies\nthe fruit sleeps\n", lex)
    assert ("D", "N", "N") in corpus and ("D", "N", "V0") in corpus
    assert len(corpus) == 2
    assert alphabet == ["D", "N", "V0"]


def test_lexicon_errors():
    lex = Lexicon.parse("a D\n")
    with pytest.raises(CorpusError, match="'cat'"):
        parse_corpus("a cat\n", lex)
    with pytest.raises(CorpusError):
        Lexicon.parse("lonely\n")


def test_fair_text_round_trip(tmp_path, english_learned):
    path = tmp_path / "fair.txt"
    corpus = generate_fair_basic_text(english_learned, path)
    assert len(corpus) == 51
    assert corpus[0] == ("PN", "V0")
    assert load_corpus(path) == corpus
    assert format_corpus(corpus, english_learned.alphabet).startswith("%pos A D N P PN V0")


def test_fair_text_of_fixtures(fixture_path):
    sizes = {name: len(fair_basic_text(load_grammar(fixture_path(name)))) for name in ("english_fragment", "palindrome_even")}
    assert sizes["english_fragment"] == 120
    assert sizes["palindrome_even"] == 6
