from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from conftest import coefficient_specs, initial_conditions, nonzero_rationals, rationals
from oracles import brute_iterate
from rdelab.closedform import (
    GeneralSolution,
    closed_form_table,
    forbidden_check,
    x_const_coeff,
    x_general,
    x_two_periodic,
)
from rdelab.engine import iterate
from rdelab.errors import ConditionViolated, FormulaDenominatorZero, SeedZero
from rdelab.model import CoefficientSpec, InitialConditions, residue_index

F = Fraction
N_MAX = 6


def oracle_values(ic, a_at, b_at, n_max):
    values, fail = brute_iterate(ic.x, a_at, b_at, 4 * n_max + 3)
    return values, fail


def oracle_x(values, k):
    return values[k + 4]


# -- general formula --------------------------------------------------------------------------


@pytest.mark.parametrize("j", range(4))
def test_base_case_returns_seed(j):
    ic = InitialConditions.of(3, -2, "5/7", 4, "-1/3")
    a, b = CoefficientSpec.periodic([2, 3]), CoefficientSpec.constant(-5)
    assert x_general(ic, a, b, 0, j) == oracle_x(ic.x, residue_index(0, j))


def test_general_examples(ones, one):
    assert x_general(ones, one, one, 1, 0) == 1
    assert x_general(ones, one, one, 2, 1) == F(3, 8)


def test_general_rejects_zero_seed(one):
    with pytest.raises(SeedZero) as exc:
        x_general(InitialConditions.of(1, 1, 0, 1, 1), one, one, 1, 0)
    assert exc.value.index == -2


def test_general_lazy_denominator_zero(one):
    # Q = -1 makes the odd factor a_1 + Q b_1 vanish; j=2 divides by it at s=0
    ic = InitialConditions.of(1, 1, 1, 1, -1)
    assert x_general(ic, one, one, 0, 2) == 1
    with pytest.raises(FormulaDenominatorZero) as exc:
        x_general(ic, one, one, 1, 2)
    assert (exc.value.parity, exc.value.s, exc.value.side, exc.value.j) == ("odd", 0, 0, 2)


def test_bad_residue_class(ones, one):
    with pytest.raises(ValueError):
        x_general(ones, one, one, 1, 4)


@settings(max_examples=150, deadline=None)
@given(initial_conditions, coefficient_specs(), coefficient_specs())
def test_general_equals_iteration(ic, a, b):
    assume(not forbidden_check(ic, a, b, N_MAX + 1))
    values, fail = oracle_values(ic, a.__getitem__, b.__getitem__, N_MAX)
    assume(fail is None)
    sol = GeneralSolution(ic, a, b)
    for n in range(N_MAX + 1):
        for j in range(4):
            k = residue_index(n, j)
            assert x_general(ic, a, b, n, j) == oracle_x(values, k) == sol.value(n, j)


@settings(max_examples=40, deadline=None)
@given(initial_conditions, coefficient_specs(), coefficient_specs())
def test_table_agrees_with_single_evaluations(ic, a, b):
    assume(not forbidden_check(ic, a, b, 5))
    table = closed_form_table(ic, a, b, 5)
    assert sorted(table) == list(range(-3, 21))
    for k, v in table.items():
        assert GeneralSolution(ic, a, b).at_index(k) == v


def test_explicit_coefficients(ones):
    a = CoefficientSpec.explicit(["1", "2", "-1/2", "3", "1", "1/3", "2", "5"])
    b = CoefficientSpec.explicit(["1", "-1", "2", "1/2", "1", "1", "-2", "1"])
    values, fail = brute_iterate(ones.x, a.__getitem__, b.__getitem__, 8)
    assert fail is None
    for k in range(-3, 9):
        assert GeneralSolution(ones, a, b).at_index(k) == values[k + 4]


# -- constant coefficients --------------------------------------------------------------------


def test_const_examples(ones):
    ic = InitialConditions.of(1, 2, 1, 1, 1)
    assert x_const_coeff(ic, -1, 1, 1, 1) == 2
    values, _ = brute_iterate(ic.x, lambda n: F(-1), lambda n: F(1), 100)
    for n in range(26):
        assert x_const_coeff(ic, -1, 1, n, 0) == 1 == values[4 * n + 4]
    assert x_const_coeff(ones, 1, 1, 1, 2) == 1


def test_const_condition_violations():
    ic = InitialConditions.of(1, 1, 1, 1, -1)
    with pytest.raises(ConditionViolated, match=r"\(2j-1\)b\*x_\{-3\}x_\{-2\}x_\{-1\}x_0 = -1 at j=1"):
        x_const_coeff(ic, 1, 1, 1, 0)
    with pytest.raises(ConditionViolated, match="b\\*x_\\{-4\\}x_\\{-3\\}x_\\{-2\\}x_\\{-1\\} = 1"):
        x_const_coeff(InitialConditions.of(1, 1, 1, 1, 2), -1, 1, 1, 0)
    with pytest.raises(ConditionViolated, match="x_0 = 0"):
        x_const_coeff(InitialConditions.of(1, 1, 1, 1, 0), 2, 1, 1, 0)


def test_const_generic_branch_denominator_not_in_printed_list():
    # a = 2, b = -1: the odd factor a^2 + bQ(1 + a) = 4 - 3Q vanishes at Q = 4/3,
    # which the printed (i, s) list (odd exponents only up to 2s+1) never tests
    ic = InitialConditions.of(1, 1, 1, 1, F(4, 3))
    assert (ic.lower_product, ic.upper_product) == (1, F(4, 3))
    with pytest.raises(FormulaDenominatorZero):
        x_const_coeff(ic, 2, -1, 1, 0)


const_a = st.one_of(st.just(F(1)), st.just(F(-1)), rationals)


@settings(max_examples=200, deadline=None)
@given(initial_conditions, const_a, rationals)
def test_const_coherence(ic, a, b):
    A, B = CoefficientSpec.constant(a), CoefficientSpec.constant(b)
    assume(not forbidden_check(ic, A, B, N_MAX + 1))
    values, fail = oracle_values(ic, lambda n: a, lambda n: b, N_MAX)
    assume(fail is None)
    for n in range(N_MAX + 1):
        for j in range(4):
            expected = oracle_x(values, residue_index(n, j))
            assert x_const_coeff(ic, a, b, n, j) == expected
            assert x_general(ic, A, B, n, j) == expected


@settings(max_examples=100, deadline=None)
@given(initial_conditions, rationals)
def test_a_equals_one_is_the_arithmetic_limit(ic, b):
    one, B = CoefficientSpec.constant(1), CoefficientSpec.constant(b)
    assume(not forbidden_check(ic, one, B, N_MAX))
    for n in range(N_MAX + 1):
        for j in range(4):
            assert x_const_coeff(ic, 1, b, n, j) == x_general(ic, one, B, n, j)


# -- 2-periodic coefficients ------------------------------------------------------------------


def test_two_periodic_examples():
    ic = InitialConditions.of(1, 1, 1, 1, 2)
    assert x_two_periodic(ic, 1, -1, 1, 1, 1, 0) == 12
    assert x_two_periodic(ic, 1, -1, 1, 1, 1, 1) == F(1, 4)
    with pytest.raises(ConditionViolated, match=r"b_1\*x_\{-3\}x_\{-2\}x_\{-1\}x_0 = 1"):
        x_two_periodic(InitialConditions.of(1, 1, 1, 1, 1), 1, -1, 1, 1, 1, 0)


pair_a = st.one_of(st.just((F(1), F(-1))), st.just((F(-1), F(1))), st.tuples(rationals, rationals))


@settings(max_examples=200, deadline=None)
@given(initial_conditions, pair_a, nonzero_rationals, rationals)
def test_two_periodic_coherence(ic, pair, b0, b1):
    a0, a1 = pair
    A, B = CoefficientSpec.periodic([a0, a1]), CoefficientSpec.periodic([b0, b1])
    assume(not forbidden_check(ic, A, B, N_MAX + 1))
    values, fail = oracle_values(ic, A.__getitem__, B.__getitem__, N_MAX)
    assume(fail is None)
    for n in range(N_MAX + 1):
        for j in range(4):
            expected = oracle_x(values, residue_index(n, j))
            assert x_two_periodic(ic, a0, a1, b0, b1, n, j) == expected
            assert x_general(ic, A, B, n, j) == expected


# -- forbidden-set reporting ------------------------------------------------------------------


def test_forbidden_empty_for_all_ones(ones, one):
    assert forbidden_check(ones, one, one, 10) == []


def test_forbidden_flags_printed_family(one):
    found = forbidden_check(InitialConditions.of(1, 1, 1, 1, -1), one, one, 1)
    family = [v for v in found if v.kind == "a_one_family"]
    assert [(v.j, v.parity) for v in family] == [(1, "odd")]
    assert family[0].description == "(2j-1)b*x_{-3}x_{-2}x_{-1}x_0 = -1 at j=1"
    general = [v for v in found if v.kind == "factor_zero"]
    assert [(v.parity, v.s, v.side) for v in general] == [("odd", 0, 0)]


def test_forbidden_flags_zero_seed(one):
    found = forbidden_check(InitialConditions.of(1, 1, 1, 1, 0), one, one, 2)
    assert any(v.kind == "seed_zero" and v.index == 0 for v in found)


def test_forbidden_reports_two_periodic_fast_branch():
    A, B = CoefficientSpec.periodic([1, -1]), CoefficientSpec.constant(1)
    found = forbidden_check(InitialConditions.of(1, 1, 1, 1, 1), A, B, 1)
    assert any(v.kind == "two_periodic_fast" and "b_1" in v.description for v in found)


def test_forbidden_reports_exhausted_explicit_data(ones, one):
    found = forbidden_check(ones, CoefficientSpec.explicit([1, 1, 1]), one, 3)
    assert found[-1].kind == "coefficient_exhausted"


@settings(max_examples=100, deadline=None)
@given(initial_conditions, coefficient_specs(), coefficient_specs(), st.integers(0, 5))
def test_forbidden_empty_means_safe(ic, a, b, n):
    if forbidden_check(ic, a, b, n):
        return
    sol = GeneralSolution(ic, a, b)
    for m in range(n + 1):
        for j in range(4):
            sol.value(m, j)
