"""Local models: literal normal forms, Siegel indices and rejection of non-admissible points."""

from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import assume, given, strategies as st

from univalens.algebra import RationalVF2
from univalens.common import INF, is_inf
from univalens.localmodels import LocalKind, NotReducedError, classify_local, siegel_indices, table_model


def expected_branches(kind, p=0, q=0, m=None, n=None, k=None):
    """Per-branch (ord, ind, CS) read off the model table."""
    F = Fraction
    if kind == "Regular":
        return {"leaf": (q, F(1), F(0))}
    if kind == "FiniteRamification":
        return {"x=0": (p, F(n), F(-m, n)), "y=0": (q, F(-m), F(-n, m))}
    if kind == "InfiniteRamification":
        return {"x=0": (p, INF, F(-q, p)), "y=0": (q, INF, F(-p, q))}
    if kind == "SaddleNode":
        return {"strong": (q, INF, F(0))}
    raise ValueError(kind)


def observed_branches(report):
    return {b.label: (b.ord, INF if is_inf(b.ind) else Fraction(b.ind), b.cs) for b in report.branch_data}


def _solve_unimodular(m, n):
    """Some (p, q) with p m - q n = 1."""
    s, t, _ = sp.gcdex(m, n)  # s m + t n = 1
    return int(s), int(-t)


@given(st.integers(1, 9), st.integers(1, 9), st.integers(-3, 3))
def test_finite_ramification_family(m, n, shift):
    assume(sp.igcd(m, n) == 1)
    p, q = _solve_unimodular(m, n)
    p, q = p + shift * n, q + shift * m  # still p m - q n = 1
    assume((p, q) != (0, 0))
    r = classify_local(table_model("FiniteRamification", p, q, m, n))
    assert r.kind == LocalKind.FINITE_RAMIFICATION
    assert (r.p, r.q, r.m, r.n) == (p, q, m, n)
    assert observed_branches(r) == expected_branches("FiniteRamification", p, q, m, n)


@given(st.integers(1, 4), st.integers(1, 4), st.sampled_from([1, -1]))
def test_infinite_ramification_family(p, q, sign):
    p, q = sign * p, sign * q
    r = classify_local(table_model("InfiniteRamification", p, q))
    assert r.kind == LocalKind.INFINITE_RAMIFICATION
    assert observed_branches(r) == expected_branches("InfiniteRamification", p, q)


@given(st.integers(-4, 4).filter(bool), st.integers(1, 5))
def test_saddle_node_family(q, k):
    r = classify_local(table_model("SaddleNode", q=q, k=k))
    assert r.kind == LocalKind.SADDLE_NODE and r.k == k and r.exactness == "formal"
    assert observed_branches(r) == expected_branches("SaddleNode", q=q, k=k)


def test_classification_survives_translation():
    vf = table_model("FiniteRamification", 1, 1, 2, 1).translate(-3, 2)
    r = classify_local(vf, (3, -2))
    assert r.kind == LocalKind.FINITE_RAMIFICATION and (r.p, r.q, r.m, r.n) == (1, 1, 2, 1)


def test_orientation_fixes_determinant_plus_one():
    # the same model written with the axes swapped still comes out with pm - qn = +1
    r = classify_local(RationalVF2.parse("x*y*(x, -2*y)"))
    assert r.p * r.m - r.q * r.n == 1


# --- Siegel indices and the sign convention -----------------------------------


@given(st.integers(-5, 5), st.integers(-5, 5), st.fractions(max_value=0, max_denominator=9))
def test_siegel_formulas(p, q, mu):
    assume((p, q) != (0, 0) and p + mu * q != 0)
    s = siegel_indices(p, q, mu)
    assert s.ind_y0 * (p + mu * q) == -1
    assert s.ind_x0 * (p + mu * q) == -mu


def test_siegel_conversion_matches_table_row():
    # mu = -n/m turns x^p y^q (x d/dx + mu y d/dy) into the model row with pm - qn = 1
    for (p, q, m, n) in [(1, 1, 2, 1), (1, 0, 1, 3), (2, 1, 1, 1), (-1, -2, 1, 1)]:
        s = siegel_indices(p, q, Fraction(-n, m))
        assert s.ind_y0 == -m and s.ind_x0 == n


def test_siegel_symbolic_mu():
    mu = -sp.sqrt(2)
    s = siegel_indices(1, 1, mu)
    assert sp.simplify(s.ind_y0 * (1 + mu) + 1) == 0


def test_siegel_degenerate_sum_gives_infinity():
    s = siegel_indices(1, 1, -1)
    assert is_inf(s.ind_y0) and is_inf(s.ind_x0)


def test_siegel_rejects_positive_mu():
    with pytest.raises(ValueError):
        siegel_indices(1, 1, Fraction(1, 2))


# --- rejections -------------------------------------------------------------------


@pytest.mark.parametrize("field, fragment", [
    ("x*(x, y^2)", "saddle-node with transverse divisor"),
    ("x*y*(x, i*y)", "not real"),
    ("x*(1, 0)", "transverse"),
])
def test_not_admissible(field, fragment):
    r = classify_local(RationalVF2.parse(field))
    assert r.kind == LocalKind.NOT_ADMISSIBLE and fragment in r.reason


def test_unreduced_point_raises():
    with pytest.raises(NotReducedError):
        classify_local(RationalVF2.parse("(x, y)"))


def test_holomorphic_point():
    assert classify_local(RationalVF2.parse("(x, -y)")).kind == LocalKind.HOLOMORPHIC


def test_report_invariant_enforced():
    from univalens.localmodels import LocalModelReport
    with pytest.raises(ValueError):
        LocalModelReport(LocalKind.FINITE_RAMIFICATION, 1, 1, 1, 1)
