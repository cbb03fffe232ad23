import random
from math import gcd
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import coefficient_specs, rationals
from oracles import brute_iterate
from rdelab.engine import iterate
from rdelab.errors import IndexBeyondExplicitData, RationalSyntaxError, ValueUnavailable
from rdelab.model import (
    CoefficientSpec,
    ExponentPattern,
    InitialConditions,
    coeff_at,
    format_rational,
    index_residue,
    parse_rational,
    residue_index,
    u_view,
)


@pytest.mark.parametrize(
    "text, value",
    [("0", Fraction(0)), ("7", Fraction(7)), ("-3/8", Fraction(-3, 8)), ("6/4", Fraction(3, 2)), ("-0", Fraction(0))],
)
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["", "1.5", "1e3", "3/0", "3/-4", "--1", "+1", "a", "1/2/3", " / "])
def test_parse_rational_rejects(text):
    with pytest.raises(RationalSyntaxError):
        parse_rational(text)


@given(st.integers(), st.integers(min_value=1))
def test_rational_text_round_trip_and_canonical(p, q):
    value = Fraction(p, q)
    text = format_rational(value)
    back = parse_rational(text)
    assert back == value
    assert back.denominator > 0
    assert format_rational(back) == text


def test_coeff_at_examples():
    assert coeff_at(CoefficientSpec.constant(1), 7) == 1
    assert coeff_at(CoefficientSpec.periodic([1, -1]), 3) == -1
    with pytest.raises(IndexBeyondExplicitData):
        coeff_at(CoefficientSpec.explicit([1, 2]), 5)


def test_explicit_spec_reads_prefix():
    spec = CoefficientSpec.explicit(["1/2", "3", "-1"])
    assert [coeff_at(spec, n) for n in range(3)] == [Fraction(1, 2), 3, -1]
    assert spec.period is None


def test_spec_validation():
    with pytest.raises(ValueError):
        CoefficientSpec.periodic([])
    with pytest.raises(ValueError):
        CoefficientSpec("constant", (1, 2))
    with pytest.raises(ValueError):
        CoefficientSpec("sometimes", (1,))
    with pytest.raises(ValueError):
        coeff_at(CoefficientSpec.constant(1), -1)


@given(coefficient_specs())
def test_periodicity(spec):
    period = spec.period
    for n in range(0, 10_001, 37):
        assert coeff_at(spec, n) == coeff_at(spec, n + period)


def test_periodicity_exhaustive_small_range():
    spec = CoefficientSpec.periodic(["1", "-2/3", "5", "0"])
    assert all(coeff_at(spec, n) == coeff_at(spec, n + 4) for n in range(10_001))


@given(coefficient_specs())
def test_spec_json_round_trip(spec):
    assert CoefficientSpec.from_json(spec.to_json()) == spec


def test_initial_conditions_views():
    ic = InitialConditions.of("1", "2", "3/4", -1, 5)
    assert ic.x_at(-4) == 1 and ic.x_at(0) == 5
    assert ic.u == ic.x
    assert ic.lower_product == Fraction(-3, 2)
    assert ic.upper_product == Fraction(-15, 2)
    with pytest.raises(ValueError):
        InitialConditions((1, 2, 3))


def test_u_view_examples(ones, one):
    traj = iterate(ones, one, one, 5)
    assert u_view(ones, traj, 0) == ones.x_at(-4)
    assert u_view(ones, traj, 4) == ones.x_at(0)
    assert u_view(ones, traj, 5) == Fraction(1, 2)


def test_u_view_past_singularity(one):
    ic = InitialConditions.of(1, 1, 1, 1, -1)
    traj = iterate(ic, one, one, 5)
    assert u_view(ic, traj, 5) == Fraction(-1, 2)
    with pytest.raises(ValueUnavailable):
        u_view(ic, traj, 6)


def test_index_map_consistency_randomized():
    rng = random.Random(11)
    for _ in range(1000):
        seeds = [Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4)) for _ in range(5)]
        av, bv = Fraction(rng.randint(-3, 3), rng.randint(1, 3)), Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        ic = InitialConditions(tuple(seeds))
        traj = iterate(ic, CoefficientSpec.constant(av), CoefficientSpec.constant(bv), 6)
        ref, _ = brute_iterate(seeds, lambda n: av, lambda n: bv, 6)
        for m in range(len(traj.values)):
            assert u_view(ic, traj, m) == traj.values[m] == ref[m]


@pytest.mark.parametrize("n, j, k", [(0, 0, 0), (1, 0, 4), (0, 1, -3), (2, 1, 5), (1, 2, 2), (1, 3, 3), (0, 3, -1)])
def test_residue_index(n, j, k):
    assert residue_index(n, j) == k
    assert index_residue(k) == (n, j)


def test_index_residue_round_trip():
    for k in range(-3, 200):
        assert residue_index(*index_residue(k)) == k


def test_exponent_pattern_parse():
    assert ExponentPattern.parse("1,-1,1,-1").p == (1, -1, 1, -1)
    assert ExponentPattern.parse(" 0, 2 ,-2,0").total == 0
    assert str(ExponentPattern.of(1, 0, -1, 0)) == "1,0,-1,0"
    for bad in ("1,a,0,0", "1,2,3", "1,2,3,4,5", "1.0,0,0,-1"):
        with pytest.raises(ValueError):
            ExponentPattern.parse(bad)


@given(rationals)
def test_rationals_are_canonical(value):
    # Fraction normalizes on construction; arithmetic keeps it that way
    r = value * 6 / 4 - value
    assert r.denominator > 0
    assert gcd(abs(r.numerator), r.denominator) == 1
