import random
from fractions import Fraction

import pytest
import sympy

from realrooted.poly import Polynomial

X = sympy.Symbol("x")


def to_sympy(P: Polynomial):
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(P.coeffs)], X)


def rand_fraction(rng: random.Random, bound=20, den=6) -> Fraction:
    return Fraction(rng.randint(-bound * den, bound * den), rng.randint(1, den))


@pytest.fixture
def rng():
    return random.Random(1234)


# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE: dict = {}


def record(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {number} ({title}): {detail}"
    ACCEPTANCE[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
