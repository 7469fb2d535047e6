import os
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from lyndonreg.closedsets import ClosedSet, fibonacci_closed
from lyndonreg.qcalc import QMatrix
from lyndonreg.words import Alphabet

settings.register_profile(
    "repro", derandomize=True, deadline=None, max_examples=100,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repro"))

A2 = Alphabet.uniform(2)


def W(s: str) -> tuple:
    return tuple(int(c) for c in s)


def cs(*words: str) -> ClosedSet:
    return ClosedSet.from_words([W(w) for w in words], A2)


def qmat(q11, q12, q21, q22) -> QMatrix:
    return QMatrix(A2, {(1, 1): q11, (1, 2): q12, (2, 1): q21, (2, 2): q22})


@pytest.fixture
def A():
    return A2


@pytest.fixture
def generic():
    return QMatrix.symbolic_generic(A2)


U2, U3, U4, U5 = (fibonacci_closed(p) for p in (2, 3, 4, 5))
U5P = cs("1", "2", "21", "221", "2221")
U5PP = cs("1", "2", "21", "211", "221")
F = Fraction


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None) if mod else None
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
