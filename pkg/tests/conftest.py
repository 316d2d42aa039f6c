import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_CRITERIA: dict[int, dict] = {}


@pytest.fixture(autouse=True)
def _default_engine(monkeypatch):
    monkeypatch.delenv("SEQCOMP_ENGINE", raising=False)
    monkeypatch.delenv("SEQCOMP_DEBUG", raising=False)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or (rep.when != "call" and rep.passed):
        return
    number, title = mark.args
    entry = _CRITERIA.setdefault(number, {"title": title, "passed": 0, "failed": []})
    if rep.failed:
        entry["failed"].append(item.name)
    elif rep.when == "call":
        entry["passed"] += 1


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        e = _CRITERIA[number]
        status = "FAIL" if e["failed"] else "PASS"
        line = f"criterion {number:2d} {status}  {e['title']}"
        if e["failed"]:
            line += f"  (failing: {', '.join(e['failed'])})"
        terminalreporter.write_line(line)
