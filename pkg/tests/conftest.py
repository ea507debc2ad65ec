import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import Poly  # noqa: E402

ACCEPTANCE_LINES = []


def to_poly(lp, names):
    """braidties LaurentPoly -> oracle Poly (integer coefficients)."""
    terms = {}
    for mono, c in lp.terms.items():
        assert Fraction(c).denominator == 1
        e = [0] * len(names)
        for var, k in mono:
            e[names.index(var)] = k
        terms[tuple(e)] = int(c)
    return Poly(names, terms)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES
