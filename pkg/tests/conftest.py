from fractions import Fraction

import pytest
from hypothesis import strategies as st

from rdelab.model import CoefficientSpec, InitialConditions

small_ints = st.integers(min_value=-9, max_value=9)
nonzero_small = small_ints.filter(bool)
dens = st.integers(min_value=1, max_value=9)

rationals = st.builds(Fraction, small_ints, dens)
nonzero_rationals = st.builds(Fraction, nonzero_small, dens)


@st.composite
def coefficient_specs(draw, max_period=4, values=rationals):
    period = draw(st.integers(min_value=1, max_value=max_period))
    vals = draw(st.lists(values, min_size=period, max_size=period))
    if period == 1:
        return CoefficientSpec.constant(vals[0])
    return CoefficientSpec.periodic(vals)


initial_conditions = st.lists(nonzero_rationals, min_size=5, max_size=5).map(
    lambda v: InitialConditions(tuple(v))
)


@pytest.fixture
def ones():
    return InitialConditions.of(1, 1, 1, 1, 1)


@pytest.fixture
def one():
    return CoefficientSpec.constant(1)


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
