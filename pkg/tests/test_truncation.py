import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from intcpx.defect import Ordering, Threshold, compare
from intcpx.errors import ContractError, DomainError, RangeError
from intcpx.pair import make_pair, pair_defect, pair_from_expression
from intcpx.poly import evaluate_at_powers, nesting_order
from intcpx.tree import tree_complexity
from intcpx.truncation import (
    STAR,
    direct_truncate,
    find_K,
    format_pattern,
    pattern_contains,
    pattern_members,
    substitute,
    truncate_pair,
)

from oracles import random_tree, supposed_defect_below

T192 = Threshold(Fraction(48, 25))


def golden():
    return pair_from_expression("(2x1+1)x2+1", C=4)


def test_golden_truncation():
    res = truncate_pair(golden(), T192)
    assert [format_pattern(p) for p in res.patterns] == ["(0,*)", "(1,*)", "(2,0)", "(2,1)"]
    got = [(str(q.poly), q.C) for q in res.pairs]
    assert got == [("3x1+1", 4), ("7x1+1", 7), ("20", 10), ("58", 13)]


def test_find_K_golden():
    assert find_K(golden(), T192) == 2


def test_find_K_contract():
    with pytest.raises(ContractError):
        find_K(golden(), Threshold(Fraction(3)))
    with pytest.raises(ContractError):
        find_K(pair_from_expression("5", C=5), T192)


def test_direct_truncate():
    q = direct_truncate(golden(), 1, 1)
    assert (str(q.poly), q.C) == ("7x1+1", 7)
    with pytest.raises(ContractError):
        direct_truncate(golden(), 2, 0)
    with pytest.raises(RangeError):
        direct_truncate(golden(), 3, 0)
    with pytest.raises(DomainError):
        direct_truncate(golden(), 1, -1)


def test_substitute_errors():
    with pytest.raises(RangeError):
        substitute(golden(), (0,))
    with pytest.raises(ContractError):
        substitute(golden(), (STAR, 0))
    q = substitute(golden(), (2, 1))
    assert q.degree == 0 and q.C == 13 and q.tree.label == 58


def test_pattern_helpers():
    assert pattern_contains((2, STAR), (2, 7))
    assert not pattern_contains((2, STAR), (1, 7))
    assert pattern_members((STAR, 1), 2) == [(0, 1), (1, 1), (2, 1)]
    assert pattern_members((5, STAR), 2) == []


def test_whole_pair_kept_when_defect_below():
    p = golden()
    res = truncate_pair(p, Threshold(Fraction(3)))
    assert res.patterns == ((STAR, STAR),) and res.pairs == (p,)


def test_degree_zero_modes():
    p = pair_from_expression("9", C=6)  # defect exactly 0
    assert len(truncate_pair(p, Threshold(Fraction(0)))) == 0
    assert len(truncate_pair(p, Threshold(Fraction(0), closed=True))) == 1


@settings(max_examples=60, deadline=None)
@given(
    st.integers(0, 2**32),
    st.fractions(min_value=0, max_value=3, max_denominator=12),
    st.booleans(),
)
def test_truncation_is_exact_on_a_box(table_small, seed, t, closed):
    p = make_pair(random_tree(random.Random(seed), 3, 6, 6), 0)
    p = make_pair(p.tree, tree_complexity(p.tree, table_small))
    thr = Threshold(t, closed)
    res = truncate_pair(p, thr)
    bound = 6
    covered = set()
    for pat, q in res:
        for pt in pattern_members(pat, bound):
            covered.add(pt)
            fixed = [k for k, e in zip(pt, pat) if e != STAR]
            free = [k for k, e in zip(pt, pat) if e == STAR]
            assert evaluate_at_powers(q.poly, free) == evaluate_at_powers(p.poly, pt)
            assert q.C == p.C + 3 * sum(fixed)

    expect = {
        pt
        for pt in itertools.product(range(bound + 1), repeat=p.degree)
        if supposed_defect_below(p.C, pt, evaluate_at_powers(p.poly, pt), t, closed)
    }
    assert covered == expect
    order = nesting_order(p.poly)
    for pat, q in res:
        assert order.is_downward_closed(i + 1 for i, e in enumerate(pat) if e != STAR)
        assert q.degree <= t
        d = pair_defect(q)
        assert compare(d, t) is not Ordering.GREATER
