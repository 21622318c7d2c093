import pytest

from fuzzyeoq.fuzzy import TriangularFuzzyNumber
from fuzzyeoq.model import base_params
from fuzzyeoq.reproduce import fuzzy_rows


@pytest.fixture
def base():
    return base_params()


@pytest.fixture
def row1(base):
    return base.replace(demand=TriangularFuzzyNumber(5000.0, 34250.0, 68000.0))


@pytest.fixture(params=range(6), ids=lambda i: f"row{i + 1}")
def fuzzy_row(request, base):
    return base.replace(demand=fuzzy_rows()[request.param])


ACCEPTANCE_LINES: list[str] = []


class Criterion:
    """Collects check lines for one acceptance criterion."""

    def __init__(self):
        self.checks = []

    def __call__(self, number, text, ok):
        self.checks.append((number, text, bool(ok)))

    def verify(self):
        for number, text, ok in self.checks:
            ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {text}")
        failed = [text for _, text, ok in self.checks if not ok]
        assert not failed, "failed checks:\n  " + "\n  ".join(failed)


@pytest.fixture
def criterion():
    return Criterion()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
