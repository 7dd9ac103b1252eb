"""Exact arithmetic over Q(i): field laws, normalization, valuations and parsing."""

from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from univalens.algebra import (BiPoly, GaussRat, ParseError, RationalFn2, RationalVF2, eigen_ratio_class,
                               parse_pair, parse_poly, parse_rational)
from univalens.algebra import cas

small = st.integers(-6, 6)
fracs = st.fractions(min_value=-5, max_value=5, max_denominator=7)
gauss = st.builds(GaussRat, fracs, fracs)
nonzero_gauss = gauss.filter(lambda g: not g.is_zero())


@st.composite
def bipolys(draw, max_deg=3, max_terms=4):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        i, j = draw(st.integers(0, max_deg)), draw(st.integers(0, max_deg))
        terms[(i, j)] = draw(gauss)
    return BiPoly(terms)


nonzero_polys = bipolys().filter(lambda p: not p.is_zero())


def to_expr(p: BiPoly):
    x, y = sp.symbols("x y")
    return sum((sp.Rational(c.re.numerator, c.re.denominator) + sp.I * sp.Rational(c.im.numerator, c.im.denominator))
               * x ** i * y ** j for (i, j), c in p.items())


# --- the coefficient field --------------------------------------------------


@given(gauss, gauss, gauss)
def test_gaussrat_ring_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * (b * c) == (a * b) * c
    assert a - a == GaussRat(0)


@given(nonzero_gauss)
def test_gaussrat_inverse(a):
    assert a * a.inverse() == GaussRat(1)
    assert (a * a.conjugate()).is_real()


def test_gaussrat_against_python_complex():
    a, b = GaussRat(Fraction(1, 3), 2), GaussRat(-1, Fraction(1, 2))
    assert abs(complex(a / b) - complex(a) / complex(b)) < 1e-15


# --- polynomials -----------------------------------------------------------


@given(bipolys(), bipolys())
def test_product_matches_sympy(p, q):
    assert sp.expand(to_expr(p * q) - to_expr(p) * to_expr(q)) == 0


@given(bipolys())
def test_derivatives_match_sympy(p):
    x, y = sp.symbols("x y")
    assert sp.expand(to_expr(p.diff_x()) - sp.diff(to_expr(p), x)) == 0
    assert sp.expand(to_expr(p.diff_y()) - sp.diff(to_expr(p), y)) == 0


@given(nonzero_polys, nonzero_polys)
def test_gcd_divides_both(p, q):
    g = cas.gcd(p, q)
    assert p.exact_div(g) is not None
    assert q.exact_div(g) is not None


@given(nonzero_polys, nonzero_polys, st.integers(1, 3), st.integers(0, 3))
def test_valuation_additive(p, q, a, b):
    # along the irreducible curve y = x^a ... order of vanishing is additive
    curve = parse_poly(f"y - x^{a}") if b % 2 else parse_poly("x")
    assert (p * q).valuation(curve) == p.valuation(curve) + q.valuation(curve)


# --- rational functions ----------------------------------------------------


@given(nonzero_polys, nonzero_polys, nonzero_polys)
def test_normalization_cancels_common_factors(p, q, r):
    f = RationalFn2(p * r, q * r)
    g = RationalFn2(p, q)
    assert f == g
    assert f.normalized() == f.normalized().normalized()
    assert cas.gcd(f.num, f.den).is_constant()


@given(nonzero_polys, nonzero_polys)
def test_round_trip_through_string(p, q):
    f = RationalFn2(p, q)
    assert parse_rational(f.to_string()) == f


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as info:
        parse_pair("(x*y, 2*x +)")
    assert info.value.position >= 10
    assert "^" in info.value.pointer()


def test_parse_negative_exponents_and_prefactor():
    vf = RationalVF2.parse("x^(-1)*y^(-2)*(-2*x, y)")
    assert vf.px == parse_rational("-2/y^2")
    assert vf.py == parse_rational("1/(x*y)")


def test_zero_field_rejected():
    with pytest.raises(ValueError):
        RationalVF2.parse("(0, 0)")


# --- eigenvalue ratio classes ----------------------------------------------


matrices = st.lists(st.lists(gauss, min_size=2, max_size=2), min_size=2, max_size=2)
invertible = matrices.filter(lambda m: not (m[0][0] * m[1][1] - m[0][1] * m[1][0]).is_zero())


def _mul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(2)), GaussRat(0)) for j in range(2)] for i in range(2)]


def _inv(m):
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    d = det.inverse()
    return [[m[1][1] * d, -m[0][1] * d], [-m[1][0] * d, m[0][0] * d]]


@given(matrices, invertible)
def test_eigen_class_conjugation_invariant(m, p):
    conj = _mul(_mul(p, m), _inv(p))
    assert eigen_ratio_class(m) == eigen_ratio_class(conj)


@given(nonzero_gauss, st.sampled_from([GaussRat(-1), GaussRat(Fraction(-2, 3)), GaussRat(3), GaussRat(0, 1)]))
def test_eigen_class_scale_invariant(c, r):
    m = [[GaussRat(1), GaussRat(0)], [GaussRat(0), r]]
    cm = [[c * v for v in row] for row in m]
    assert eigen_ratio_class(m) == eigen_ratio_class(cm)


def test_eigen_class_values():
    one, zero = GaussRat(1), GaussRat(0)
    assert eigen_ratio_class([[one, zero], [zero, GaussRat(-2)]]).ratio in (Fraction(-2), Fraction(-1, 2))
    assert eigen_ratio_class([[zero, one], [zero, zero]]).kind.value == "Nilpotent"
    assert eigen_ratio_class([[one, zero], [zero, zero]]).kind.value == "OneZeroNonNilpotent"
    assert eigen_ratio_class([[zero, one], [-one, zero]]).ratio == Fraction(-1)
