import time
from contextlib import contextmanager

import pytest

_LINES = []


@pytest.fixture
def criterion():
    """Time a block against a runtime limit and record one PASS/FAIL line for the summary."""

    @contextmanager
    def run(number, title, limit):
        start = time.perf_counter()
        status = "FAIL"
        try:
            yield
            status = "PASS"
        finally:
            took = time.perf_counter() - start
            if status == "PASS" and took > limit:
                status = "FAIL (too slow)"
            line = f"criterion {number:>2} {status:<15} {took:7.2f}s / {limit:g}s  {title}"
            _LINES.append(line)
            print(line)
        assert took <= limit, f"criterion {number} took {took:.2f}s, limit {limit}s"

    return run


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_LINES, key=lambda l: int(l.split()[1])):
            terminalreporter.write_line(line)
