"""Collect acceptance-criterion outcomes and print one line per criterion."""

import pytest

_results = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            item.user_properties.append(("criterion", mark.args))


@pytest.hookimpl(trylast=True)
def pytest_runtest_logreport(report):
    info = dict(report.user_properties).get("criterion")
    if info is None:
        return
    number, title = info
    prev = _results.get(number, (title, True))
    if report.when == "call" or report.failed:
        _results[number] = (title, prev[1] and report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        title, ok = _results[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}")
