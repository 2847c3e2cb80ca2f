import numpy as np
import pytest
from hypothesis import settings, strategies as st

from conserved_ops.diffop import DiffOp
from conserved_ops.exactnum import ConstPoly, GaussRat
from conserved_ops.fourier import FourierPoly

settings.register_profile("default", deadline=None)
settings.load_profile("default")

SYMBOLS = ("A", "B", "hbar")

rationals = st.fractions(min_value=-6, max_value=6, max_denominator=5)
gaussrats = st.builds(GaussRat, rationals, rationals)
monomials = st.lists(
    st.tuples(st.sampled_from(SYMBOLS), st.integers(1, 2)), max_size=2
).map(tuple)
constpolys = st.lists(st.tuples(monomials, gaussrats), max_size=3).map(ConstPoly)
fourierpolys = st.lists(st.tuples(st.integers(-4, 4), constpolys), max_size=4).map(FourierPoly)
numeric_fourierpolys = st.lists(
    st.tuples(st.integers(-4, 4), gaussrats), max_size=4
).map(FourierPoly)
diffops = st.lists(st.tuples(st.integers(0, 8), fourierpolys), max_size=4).map(DiffOp)


unit_rationals = st.fractions(min_value=-1, max_value=1, max_denominator=5)


def rational_binding(names=SYMBOLS):
    # values in [-1, 1] keep magnitudes small enough for absolute float tolerances
    return st.fixed_dictionaries({n: unit_rationals for n in names})


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
