import itertools
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from sigma_congruence import GF, QQ, Matrix

FIELDS = [QQ, GF(2), GF(3), GF(5), GF(7)]


def leibniz_det(rows):
    """Permutation-expansion determinant: slow, but shares nothing with elimination."""
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inversions % 2 else 1
        for i in range(n):
            term *= rows[i][perm[i]]
        total += term
    return total


def rational_matrices(n, bound=6):
    entries = st.fractions(min_value=-bound, max_value=bound, max_denominator=4)
    return st.lists(st.lists(entries, min_size=n, max_size=n), min_size=n, max_size=n).map(
        lambda rows: Matrix(QQ, rows)
    )


def prime_matrices(n, p):
    entries = st.integers(0, p - 1)
    return st.lists(st.lists(entries, min_size=n, max_size=n), min_size=n, max_size=n).map(
        lambda rows: Matrix(GF(p), rows)
    )


def any_matrices(max_n=4):
    return st.integers(1, max_n).flatmap(
        lambda n: st.one_of(rational_matrices(n), *(prime_matrices(n, p) for p in (2, 3, 5, 7)))
    )


@pytest.fixture(params=FIELDS, ids=str)
def field(request):
    return request.param


def frac(x):
    return Fraction(x)


# -- acceptance summary --------------------------------------------------------

ACCEPTANCE_LINES = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the outcome is read back from the test report."""
    name = request.node.name
    ACCEPTANCE_LINES[name] = ["FAIL", request.node.function.__doc__.strip().splitlines()[0], ""]

    def note(text):
        ACCEPTANCE_LINES[name][2] = text

    return note


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call" and item.name in ACCEPTANCE_LINES:
        ACCEPTANCE_LINES[item.name][0] = "PASS" if rep.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE_LINES):
        status, title, detail = ACCEPTANCE_LINES[name]
        terminalreporter.write_line(f"{status}  {title}" + (f"  [{detail}]" if detail else ""))
