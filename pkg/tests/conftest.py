import re

import pytest

_LINES = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_LINES] = {}


@pytest.fixture
def criterion(request):
    """record(number, ok, detail): log one acceptance line and fail the test if not ok."""
    lines = request.config.stash[_LINES]
    started = re.search(r"criterion_(\d+)", request.node.name)
    if started:
        n = int(started.group(1))
        lines[n] = f"criterion {n:2d}: FAIL  did not complete"

    def record(number: int, ok: bool, detail: str) -> None:
        line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
        lines[number] = line
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_LINES, {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
