from __future__ import annotations

import pytest

_criteria: dict[int, str] = {}
_outcomes: dict[int, list[bool]] = {}
_owner: dict[str, int] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        marker = item.get_closest_marker("criterion")
        if marker is None:
            continue
        number, title = marker.args
        _criteria[number] = title
        _owner[item.nodeid] = number


def pytest_runtest_logreport(report):
    number = _owner.get(report.nodeid)
    if number is None:
        return
    if report.when == "call" or report.failed:
        _outcomes.setdefault(number, []).append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        results = _outcomes.get(number)
        if not results:
            status = "NOT RUN"
        else:
            status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d}: {status:7s} {_criteria[number]}")


@pytest.fixture(scope="session")
def graph_2310():
    from comaximal.arithmetic import factor_squarefree
    from comaximal.explicit_graph import build_graph

    return build_graph(factor_squarefree(2310))
