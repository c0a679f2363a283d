from collections import Counter
from itertools import product as iproduct

import pytest
from hypothesis import given, strategies as st

from polypart.errors import BudgetExceeded, DimensionMismatch
from polypart.f2dickson import (F2Poly, MonomialIdeal, dickson_product, dickson_symmetric, index_ideal,
                                multiply, obstruction_check, power, reduce_mod_ideal, square,
                                witness_monomial)

u1, u2 = F2Poly.variable(2, 0), F2Poly.variable(2, 1)


def brute_force_dickson_power(s, j):
    """Expand prod of the nonzero linear forms, j times over, by choosing one
    variable from every factor and counting each monomial's parity."""
    forms = [[i for i in range(s) if a[i]] for a in iproduct((0, 1), repeat=s) if any(a)] * j
    parity = Counter()
    for choice in iproduct(*forms):
        e = [0] * s
        for i in choice:
            e[i] += 1
        parity[tuple(e)] ^= 1
    return {m for m, bit in parity.items() if bit}


def test_arithmetic_examples():
    assert (u1 + u2) + u2 == u1
    assert power(u1 + u2, 2) == F2Poly(2, [(2, 0), (0, 2)])
    assert multiply(F2Poly(2, [(1, 1)]), u1) == F2Poly(2, [(2, 1)])
    with pytest.raises(DimensionMismatch):
        u1 + F2Poly.variable(3, 0)


def test_dickson_product_examples():
    assert dickson_product(1) == F2Poly(1, [(1,)])
    assert dickson_product(2) == F2Poly(2, [(2, 1), (1, 2)])
    q3 = dickson_product(3)
    assert len(q3) == 6 and q3.degree == 7
    assert q3 == dickson_symmetric(3)


def test_dickson_product_matches_brute_force():
    for s in (1, 2, 3):
        assert dickson_product(s).terms == brute_force_dickson_power(s, 1)


def test_dickson_symmetric_examples():
    assert dickson_symmetric(1) == F2Poly(1, [(1,)])
    assert dickson_symmetric(2) == F2Poly(2, [(2, 1), (1, 2)])
    assert len(dickson_symmetric(3)) == 6


@pytest.mark.parametrize("s", range(1, 6))
def test_two_presentations_agree(s):
    q = dickson_product(s)
    assert q == dickson_symmetric(s)
    assert {sum(t) for t in q.terms} == {2 ** s - 1}


def test_reduce_examples():
    ideal = MonomialIdeal((2, 3))
    assert reduce_mod_ideal(dickson_product(2), ideal) == F2Poly(2, [(1, 2)])
    assert reduce_mod_ideal(F2Poly(2, [(2, 0)]), ideal).is_zero()
    assert reduce_mod_ideal(F2Poly(2), ideal).is_zero()


def test_obstruction_examples():
    r = obstruction_check(1, 1)
    assert r.nonzero and r.witness_present and r.witness == (1,)
    r = obstruction_check(2, 1)
    assert r.nonzero and r.witness_present and r.witness == (1, 2)
    assert r.remainder == F2Poly(2, [(1, 2)])
    r = obstruction_check(3, 2)
    assert r.nonzero and r.witness_present and r.witness == (2, 4, 8)


def test_obstruction_s3_j2_against_brute_force():
    expanded = F2Poly(3, brute_force_dickson_power(3, 2))
    assert expanded == power(dickson_product(3), 2)
    rem = reduce_mod_ideal(expanded, index_ideal(3, 2))
    assert (2, 4, 8) in rem
    assert rem == obstruction_check(3, 2).remainder


@pytest.mark.parametrize("s", range(1, 5))
@pytest.mark.parametrize("j", range(1, 4))
def test_obstruction_grid(s, j):
    r = obstruction_check(s, j)
    assert r.nonzero and r.witness_present
    assert r.witness == witness_monomial(s, j)


def test_index_ideal_thresholds():
    assert index_ideal(4, 3).thresholds == (4, 7, 13, 25)


polys2 = st.sets(st.tuples(st.integers(0, 6), st.integers(0, 6), st.integers(0, 6)), max_size=12).map(
    lambda ts: F2Poly(3, ts))


@given(polys2)
def test_frobenius(p):
    assert power(p, 2) == multiply(p, p) == square(p)
    assert square(p).terms == {tuple(2 * e for e in t) for t in p.terms}


@given(polys2, st.tuples(st.integers(1, 9), st.integers(1, 9), st.integers(1, 9)))
def test_reduction_idempotent(p, thresholds):
    ideal = MonomialIdeal(thresholds)
    once = reduce_mod_ideal(p, ideal)
    assert reduce_mod_ideal(once, ideal) == once


@given(polys2, polys2)
def test_addition_is_symmetric_difference(p, q):
    assert (p + q).terms == p.terms ^ q.terms
    assert (p + p).is_zero()


def test_budgets():
    with pytest.raises(BudgetExceeded):
        dickson_product(7)
    with pytest.raises(BudgetExceeded):
        dickson_product(4, budget=5)
