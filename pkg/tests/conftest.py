import os
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from kellipse.exactalg import GaussianRational, MultiPoly


def pytest_addoption(parser):
    parser.addoption("--run-k6", action="store_true", default=False, help="run the k=6 checks (several minutes)")


def pytest_configure(config):
    config.addinivalue_line("markers", "k6: opt-in k=6 computations (--run-k6 or KELLIPSE_RUN_K6=1)")
    config.addinivalue_line("markers", "slow: k=5 computations")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-k6") or os.environ.get("KELLIPSE_RUN_K6") == "1":
        return
    skip = pytest.mark.skip(reason="k=6 is opt-in: pass --run-k6")
    for item in items:
        if "k6" in item.keywords:
            item.add_marker(skip)


rationals = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5))
gaussians = st.builds(GaussianRational, rationals, rationals)


@st.composite
def polys(draw, max_deg=3, max_terms=5, complex_coeffs=True, variables=("x", "y")):
    n = draw(st.integers(0, max_terms))
    coeff = gaussians if complex_coeffs else st.builds(GaussianRational, rationals)
    terms = {}
    for _ in range(n):
        a = draw(st.integers(0, max_deg))
        b = draw(st.integers(0, max_deg - a))
        c = draw(st.integers(0, max_deg - a - b)) if "z" in variables else 0
        terms[(a, b, c)] = draw(coeff)
    return MultiPoly(terms, variables)


def nonzero(strategy):
    return strategy.filter(lambda p: not p.is_zero())


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
