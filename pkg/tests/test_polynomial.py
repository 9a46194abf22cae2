from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from ramanujan_rg.errors import InexactDivision
from ramanujan_rg.polynomial import IntPoly, poly_gcd, squarefree_decomposition, squarefree_part

x = sympy.symbols("x")

coeff_lists = st.lists(st.integers(-50, 50), min_size=1, max_size=8)


def to_sympy(p: IntPoly):
    return sympy.Poly(p.descending() or [0], x)


def test_str_and_construction():
    assert str(IntPoly.from_descending([1, 0, -3, -2])) == "x^3 - 3x - 2"
    assert str(IntPoly([0, -1])) == "-x"
    assert str(IntPoly()) == "0"
    assert IntPoly.from_roots([2, -1, -1]) == IntPoly.from_descending([1, 0, -3, -2])
    assert IntPoly([1, 2, 0, 0]).degree == 1


@given(coeff_lists, coeff_lists)
@settings(max_examples=60, deadline=None)
def test_ring_ops_match_sympy(a, b):
    pa, pb = IntPoly(a), IntPoly(b)
    assert to_sympy(pa * pb) == to_sympy(pa) * to_sympy(pb)
    assert to_sympy(pa + pb) == to_sympy(pa) + to_sympy(pb)
    assert to_sympy(pa - pb) == to_sympy(pa) - to_sympy(pb)


@given(coeff_lists, st.integers(-3, 3), st.integers(-5, 5))
@settings(max_examples=60, deadline=None)
def test_compose_linear(a, s, t):
    p = IntPoly(a)
    expected = sympy.expand(to_sympy(p).as_expr().subs(x, s * x + t))
    assert to_sympy(p.compose_linear(s, t)) == sympy.Poly(expected, x)


@given(coeff_lists, coeff_lists)
@settings(max_examples=60, deadline=None)
def test_exact_division_roundtrip(a, b):
    pa, pb = IntPoly(a), IntPoly(b + [1])
    if pa.is_zero():
        return
    assert (pa * pb).exact_div(pb) == pa


def test_inexact_division_raises():
    with pytest.raises(InexactDivision):
        IntPoly([1, 0, 1]).exact_div(IntPoly([1, 1]))
    with pytest.raises(InexactDivision):
        IntPoly([1, 1]).divmod(IntPoly([1, 2]))


@given(coeff_lists, coeff_lists)
@settings(max_examples=60, deadline=None)
def test_pseudo_remainder(a, b):
    pa, pb = IntPoly(a), IntPoly(b)
    if pb.is_zero():
        return
    expected = sympy.prem(to_sympy(pa), to_sympy(pb))
    assert to_sympy(pa.pseudo_rem(pb)) == sympy.Poly(expected, x)


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=6), st.lists(st.integers(-4, 4), max_size=4))
@settings(max_examples=60, deadline=None)
def test_gcd_and_squarefree(roots, extra):
    p = IntPoly.from_roots(roots + extra + roots)
    sqf = squarefree_part(p)
    assert sqf == IntPoly.from_roots(sorted(set(roots + extra)))
    g = poly_gcd(p, p.derivative())
    assert to_sympy(g).monic() == sympy.gcd(to_sympy(p), to_sympy(p.derivative())).monic()


def test_sign_at_rational():
    p = IntPoly([-2, 0, 1])  # x^2 - 2
    assert p.sign_at(141) == 1
    assert p.sign_at(Fraction(141, 100)) == -1
    assert p.sign_at(Fraction(142, 100)) == 1
    assert IntPoly([4, 0, -1]).sign_at(2) == 0
    assert p.sign_at_infinity(True) == 1 and p.sign_at_infinity(False) == 1
    assert IntPoly([0, 1]).sign_at_infinity(False) == -1


def test_even_odd_parts():
    p = IntPoly([1, 2, 3, 4, 5])
    e, o = p.even_odd_parts()
    for v in range(-3, 4):
        assert p(v) == e(v * v) + v * o(v * v)


@given(st.lists(st.integers(-4, 4), max_size=9), st.integers(0, 2), st.integers(1, 3))
@settings(max_examples=60, deadline=None)
def test_squarefree_decomposition_matches_sympy(roots, n_quad, lead):
    # x^2 + 1 factors exercise non-real roots; lead makes p non-monic
    p = IntPoly.from_roots(roots) * IntPoly([1, 0, 1]) ** n_quad * lead
    factors = squarefree_decomposition(p)
    product = IntPoly([1])
    for i, a in enumerate(factors, start=1):
        product = product * a ** i
    assert product == p.primitive_part()
    expected = {}
    for f, mult in sympy.sqf_list(to_sympy(p))[1]:
        expected[mult] = expected.get(mult, sympy.Poly(1, x)) * f
    for i, a in enumerate(factors, start=1):
        assert to_sympy(a).monic() == expected.get(i, sympy.Poly(1, x)).monic()
