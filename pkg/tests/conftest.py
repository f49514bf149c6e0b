from fractions import Fraction

import pytest

from ballot.main import create_app

# Rational mu values used by the exhaustive sweeps
MU_TEST_SET = [
    Fraction(1),
    Fraction(4, 3),
    Fraction(3, 2),
    Fraction(5, 3),
    Fraction(2),
    Fraction(7, 3),
    Fraction(5, 2),
    Fraction(3),
]
INTEGER_MUS = [Fraction(1), Fraction(2), Fraction(3)]


def grid(max_total, min_a=0):
    """All (a, b) with 1 <= a + b <= max_total."""
    return [
        (a, n - a)
        for n in range(1, max_total + 1)
        for a in range(min_a, n + 1)
    ]


@pytest.fixture()
def app():
    app = create_app()
    app.config.update(TESTING=True)
    return app


@pytest.fixture()
def client(app):
    return app.test_client()
