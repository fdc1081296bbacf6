import random
from fractions import Fraction

import pytest

ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])


def random_fraction(rng, denom=1000):
    return Fraction(rng.randint(1, denom - 1), denom)


def sample_fracs(rng, cond, tries=200000, denom=1000):
    """Rational (alpha, beta, gamma, delta) satisfying ``cond``; None when nothing turns up."""
    for _ in range(tries):
        fr = tuple(random_fraction(rng, denom) for _ in range(4))
        if cond(*fr):
            return fr
    return None


@pytest.fixture
def rng():
    return random.Random(20261017)
