import random
from fractions import Fraction
from pathlib import Path

import pytest

from paftd import AF, PAF

FIXTURES = Path(__file__).parent / "fixtures"

# one line per acceptance criterion, echoed after the test run
acceptance_lines: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_lines:
            terminalreporter.line(line)


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


def tenth(rnd: random.Random) -> Fraction:
    return Fraction(rnd.randint(1, 9), 10)


def random_paf(rnd: random.Random, max_args: int = 8, max_uncertain: int = 12) -> PAF:
    """A small random PAF with tenths probabilities and a bounded number of
    uncertain elements, suitable for oracle cross-checks."""
    n = rnd.randint(1, max_args)
    names = [f"x{i}" for i in range(n)]
    attacks = [(x, y) for x in names for y in names if rnd.random() < 0.3]
    pool = names + attacks
    uncertain = set(rnd.sample(range(len(pool)), min(max_uncertain, len(pool))))
    arg_prob = {
        a: tenth(rnd) if i in uncertain else Fraction(1) for i, a in enumerate(names)
    }
    att_prob = {
        r: tenth(rnd) if len(names) + i in uncertain else Fraction(1)
        for i, r in enumerate(attacks)
    }
    return PAF(AF(names, attacks), arg_prob, att_prob)


def random_subset(rnd: random.Random, paf: PAF, rate: float = 0.4) -> frozenset:
    return frozenset(a for a in paf.af.arguments if rnd.random() < rate)
