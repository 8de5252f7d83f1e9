import pytest
from hypothesis import settings

from selectivity import BaseField, RelativeExtension

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

# (discriminant, min_poly constant term first, comment)
CORPUS = [
    (-23, [-1, -1, 0, 1], "Hilbert class field of Q(sqrt(-23))"),
    (-20, [9, 0, -2, 0, 1], "k(zeta_8), contains the Hilbert class field k(i)"),
    (-84, [16, 0, -4, 0, 1], "k(i, sqrt(3)), the Hilbert class field, Cl = C2 x C2"),
    (-23, [-2, 0, 0, 1], "k(2^(1/3)), disjoint from the Hilbert class field"),
    (-47, [-2, 0, 0, 1], "k(2^(1/3)) over a field with Cl = C5"),
    (-4, [-2, 0, 0, 1], "k(2^(1/3)) over Q(i), class number one"),
    (0, [-1, -1, 0, 1], "the cubic field of discriminant -23 over Q"),
]


def corpus_extensions():
    return [RelativeExtension.from_pairs(BaseField(d), f) for d, f, _ in CORPUS]


@pytest.fixture(scope="session")
def corpus():
    return corpus_extensions()


@pytest.fixture(scope="session")
def golden23():
    return RelativeExtension.from_pairs(BaseField(-23), [-1, -1, 0, 1])


@pytest.fixture(scope="session")
def golden20():
    return RelativeExtension.from_pairs(BaseField(-20), [9, 0, -2, 0, 1])


# one line per acceptance criterion, collected by tests/test_acceptance.py
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[num])
