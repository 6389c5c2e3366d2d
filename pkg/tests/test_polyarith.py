from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from degenkit.polyarith import (
    GREVLEX,
    LEX,
    MonomialOrder,
    Polynomial,
    VariableContext,
    compare,
    format_rational,
    monomials_of_weight,
    weight_of,
    weighted_order,
)

CTX3 = VariableContext(("x", "y", "z"))

exponents = st.tuples(*[st.integers(0, 5)] * 3)
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=7)
polys = st.dictionaries(exponents, coeffs, max_size=5).map(lambda d: Polynomial(CTX3, d))

ORDERS = [LEX, GREVLEX, weighted_order([(3, 2, 1)]), weighted_order([(1, 1, 0), (0, 0, 1)], "lex"),
          weighted_order([(2, 0, 1)], "lex")]


def test_weight_of_examples():
    assert weight_of((2, 3), (3, 2)) == 12
    assert weight_of((0, 0, 0), (4, 5, 6)) == 0
    assert weight_of((1, 1), (1, 1)) == 2
    with pytest.raises(ValueError):
        weight_of((1, 2), (1, 2, 3))


def test_compare_examples():
    order = weighted_order([(1, 1)], "lex")
    assert compare(order, (2, 3), (3, 2)) < 0
    assert compare(GREVLEX, (2, 0), (1, 1)) > 0
    for o in ORDERS[:2]:
        assert compare(o, (1, 4), (1, 4)) == 0


def test_grevlex_reverse_tiebreak():
    # x*z^2 < y^3?  grevlex: same degree, last differing variable z has larger exponent -> smaller
    assert compare(GREVLEX, (1, 0, 2), (0, 3, 0)) < 0
    assert compare(LEX, (1, 0, 2), (0, 3, 0)) > 0


def test_zero_coefficients_dropped_and_like_terms_merge():
    p = Polynomial(CTX3, {(1, 0, 0): 2, (0, 1, 0): 0})
    assert p.terms == {(1, 0, 0): Fraction(2)}
    x = Polynomial.variable(CTX3, "x")
    assert x + x == Polynomial(CTX3, {(1, 0, 0): 2})
    assert not (x - x)
    assert (x - x).terms == {}


def test_rationals_stay_reduced():
    half = Polynomial.constant(CTX3, Fraction(2, 4))
    assert half.coefficient((0, 0, 0)) == Fraction(1, 2)
    assert format_rational(Fraction(-6, 4)) == "-3/2"
    assert format_rational(Fraction(0)) == "0"


def test_context_mismatch_rejected():
    other = VariableContext(("a", "b", "c"))
    with pytest.raises(ValueError):
        Polynomial.variable(CTX3, "x") + Polynomial.variable(other, "a")


def test_monomials_of_weight():
    got = sorted(monomials_of_weight((3, 2), 6))
    assert got == [(0, 3), (2, 0)]
    assert sorted(monomials_of_weight((1, 1), 2)) == [(0, 2), (1, 1), (2, 0)]


def test_substitute_and_compose():
    x, y, z = (Polynomial.variable(CTX3, n) for n in "xyz")
    f = x * y + z ** 2
    assert f.substitute({"z": 1}) == x * y + 1
    t = VariableContext(("t",))
    T = Polynomial.variable(t, "t")
    assert f.compose(t, [T, T ** 2, T]) == T ** 3 + T ** 2


def test_lowest_part():
    x, y, _ = (Polynomial.variable(CTX3, n) for n in "xyz")
    f = y ** 2 - x ** 2 - x ** 3
    assert f.lowest_part((1, 1, 1)) == y ** 2 - x ** 2
    assert f.min_weight((1, 1, 1)) == 2


@settings(max_examples=150, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert (f + g) * h == f * h + g * h
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f + (-f) == Polynomial.zero(CTX3)
    assert f - g == -(g - f)


@settings(max_examples=1000, deadline=None)
@given(exponents, exponents, exponents, st.sampled_from(range(len(ORDERS))))
def test_orders_are_multiplicative(a, b, c, k):
    order = ORDERS[k]
    ac = tuple(p + q for p, q in zip(a, c))
    bc = tuple(p + q for p, q in zip(b, c))
    assert compare(order, a, b) == compare(order, ac, bc)


@settings(max_examples=200, deadline=None)
@given(exponents, exponents, st.sampled_from(range(len(ORDERS))))
def test_orders_total_and_antisymmetric(a, b, k):
    order = ORDERS[k]
    ab, ba = compare(order, a, b), compare(order, b, a)
    assert ab == -ba
    assert (ab == 0) == (a == b)


def test_weighted_order_rejects_bad_rows():
    with pytest.raises(ValueError):
        MonomialOrder("weighted")
    with pytest.raises(ValueError):
        MonomialOrder("bogus")
