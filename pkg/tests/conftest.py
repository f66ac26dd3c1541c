from pathlib import Path

import pytest

from pumpgram.grammar import load_grammar

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "pumpgram" / "fixtures"


@pytest.fixture
def fixture_path():
    return lambda name: FIXTURES / f"{name}.cfg"


@pytest.fixture
def english_target():
    return load_grammar(FIXTURES / "english_fragment.cfg")


@pytest.fixture
def english_learned():
    return load_grammar(FIXTURES / "english_learned_right.cfg")


# one pass/fail line per acceptance criterion, printed after the run
_criteria: dict = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None or rep.when != "call" and not rep.failed:
        return
    n = mark.args[0]
    ok = _criteria.get(n, (True, ""))[0] and rep.passed
    _criteria[n] = (ok, mark.kwargs.get("title", item.name))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        ok, title = _criteria[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}")
