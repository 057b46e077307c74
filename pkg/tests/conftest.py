import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_RESULTS = {}


@pytest.fixture
def criterion(request):
    """Record the verdict of one acceptance criterion for the terminal summary."""
    seen = []

    def record(number, title, ok, detail=""):
        _RESULTS[number] = (title, ok, detail)
        seen.append(number)

    yield record
    if not seen:
        num = getattr(request.node.function, "criterion_number", None)
        if num is not None:
            _RESULTS[num] = (request.node.name, False, "raised before recording a verdict")


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for n in sorted(_RESULTS):
        title, ok, detail = _RESULTS[n]
        terminalreporter.write_line(f"criterion {n} [{'PASS' if ok else 'FAIL'}] {title}: {detail}")
