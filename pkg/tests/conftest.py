"""Collects one outcome per acceptance criterion and prints them at the end of the run."""

import pytest

_RESULTS = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.fixture
def notes(request):
    """A list the test can append short findings to; they are printed with the outcome."""
    found = []
    request.node._acceptance_notes = found
    return found


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        number, title = marker.args
        _RESULTS[number] = (title, report.passed, list(getattr(item, "_acceptance_notes", [])))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_RESULTS):
        title, passed, found = _RESULTS[number]
        line = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {title}"
        if found:
            line += "  [" + "; ".join(found) + "]"
        tr.write_line(line)
