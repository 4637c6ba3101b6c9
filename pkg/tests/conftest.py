from pathlib import Path

import pytest

from trustinfer.core import BehaviorAlphabet, Hypothesis, HypothesisSet, validate_profile
from trustinfer.io import parse_profile, read_text

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
ABCD = BehaviorAlphabet(("a", "b", "c", "d"))

_acceptance_lines = []


@pytest.fixture
def p0():
    return validate_profile({"a": 0.98, "b": 0.005, "c": 0.005, "d": 0.01}, ABCD)


@pytest.fixture
def p1():
    return validate_profile({"a": 0.098, "b": 0.001, "c": 0.001, "d": 0.9}, ABCD)


@pytest.fixture
def pair(p0, p1):
    return HypothesisSet((Hypothesis("0", p0, 0.5), Hypothesis("1", p1, 0.5)))


@pytest.fixture
def fair():
    return validate_profile({"h": 0.5, "t": 0.5}, ("h", "t"))


@pytest.fixture
def fixture_profile():
    return lambda name: parse_profile(read_text(FIXTURES / name))


@pytest.fixture
def criterion():
    """Record an acceptance outcome; the lines are printed in the terminal summary."""
    def record(number, text, ok):
        _acceptance_lines.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {text}")
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
