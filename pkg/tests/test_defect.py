import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from intcpx.defect import DefectValue, Ordering, Threshold, compare, parse_fraction, parse_threshold
from intcpx.errors import DomainError, ParseError


def test_threshold_parsing_is_exact():
    assert parse_fraction("1.92") == Fraction(48, 25)
    assert parse_fraction("48/25") == Fraction(48, 25)
    assert parse_fraction("0") == 0
    assert parse_threshold("0.9", closed=True) == Threshold(Fraction(9, 10), True)


@pytest.mark.parametrize("bad", ["", "abc", "1e3", "nan", "1/0", "inf"])
def test_threshold_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_fraction(bad)


def test_defect_requires_positive_argument():
    with pytest.raises(DomainError):
        DefectValue(1, 0)


def test_compare_examples():
    assert compare(DefectValue(2, 2), Threshold(Fraction(1))) is Ordering.LESS  # 3 < 2^3
    assert compare(DefectValue(3, 3), Fraction(0)) is Ordering.EQUAL
    assert compare(DefectValue(10, 28), Fraction(9, 10)) is Ordering.GREATER
    assert 3**91 > 28**30


def test_delta_28_is_a_double_precision_hazard():
    lhs = 91 * math.log(3)
    rhs = 30 * math.log(28)
    assert abs(float(DefectValue(10, 28)) - 0.9) < 1e-3
    assert lhs - rhs < 0.07  # logs of both sides agree closely
    assert compare(DefectValue(10, 28), Fraction(9, 10)) is Ordering.GREATER


def test_equality_rule_and_hash():
    a = DefectValue(5, 6)
    assert compare(a, DefectValue(8, 18)) is Ordering.EQUAL
    assert a == DefectValue(2, 2) and hash(a) == hash(DefectValue(2, 2))
    assert a != DefectValue(5, 7)
    assert DefectValue(1, 1) == 1 and DefectValue(6, 9) == 0


def test_integer_value():
    assert DefectValue(1, 1).integer_value() == 1
    assert DefectValue(6, 9).integer_value() == 0
    assert DefectValue(2, 2).integer_value() is None


def test_threshold_modes():
    d = DefectValue(3, 3)
    assert not Threshold(Fraction(0)).admits(d)
    assert Threshold(Fraction(0), closed=True).admits(d)


def test_decimal_display_close_to_float():
    d = DefectValue(10, 28)
    assert abs(float(d.to_decimal(12)) - (10 - 3 * math.log(28) / math.log(3))) < 1e-12
    assert str(DefectValue(2, 2).to_decimal(4)) == "0.1072"


defects = st.builds(DefectValue, st.integers(-5, 60), st.integers(1, 10**6))


@given(defects, defects)
def test_compare_antisymmetric_and_matches_float_when_far(a, b):
    ab, ba = compare(a, b), compare(b, a)
    assert ab == -ba
    gap = float(a) - float(b)
    if abs(gap) > 1e-6:
        assert ab is (Ordering.LESS if gap < 0 else Ordering.GREATER)


@given(defects, defects, defects)
def test_compare_transitive(a, b, c):
    if compare(a, b) <= 0 and compare(b, c) <= 0:
        assert compare(a, c) <= 0


def test_compare_transitive_random_triples():
    rng = random.Random(7)
    vals = [DefectValue(rng.randint(0, 40), rng.randint(1, 10**5)) for _ in range(300)]
    for _ in range(3000):
        a, b, c = rng.sample(vals, 3)
        if a <= b and b <= c:
            assert a <= c


@given(defects, st.fractions(min_value=-3, max_value=50, max_denominator=50))
def test_threshold_compare_consistent_with_defect_compare(d, x):
    # Away from ties the float order must agree.
    gap = float(d) - float(x)
    if abs(gap) > 1e-6:
        assert compare(d, x) is (Ordering.LESS if gap < 0 else Ordering.GREATER)
    assert compare(x, d) == -compare(d, x)
