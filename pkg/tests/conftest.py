import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import strategies as st

from doubleforms.biform import BiForm

_ACCEPTANCE: list[tuple[str, str]] = []


@st.composite
def biforms(draw, dims=None, bidegree=None, max_terms=6, square=False):
    """Small sparse bi-forms with rational coefficients."""
    if dims is None:
        nv = draw(st.integers(1, 5))
        nw = nv if square else draw(st.integers(1, 5))
        dims = (nv, nw)
    if bidegree is None:
        bidegree = (draw(st.integers(0, dims[0])), draw(st.integers(0, dims[1])))
    keys = [
        (I, J)
        for I in combinations(range(1, dims[0] + 1), bidegree[0])
        for J in combinations(range(1, dims[1] + 1), bidegree[1])
    ]
    chosen = draw(st.lists(st.sampled_from(keys), max_size=max_terms, unique=True))
    values = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return BiForm(bidegree, dims, {k: draw(values) for k in chosen})


@pytest.fixture
def rng():
    return random.Random(20261015)


def frac(x):
    return Fraction(x)


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    label = dict(report.user_properties).get("criterion", report.nodeid.split("::")[-1])
    _ACCEPTANCE.append((label, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, outcome in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {label}")
