"""Riccati foliations: Moebius maps, monodromy, fiber classes, flips, census and the forbid check."""

import cmath
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from univalens.algebra import GaussRat, RationalVF2
from univalens.common import INF, is_inf
from univalens.continuation import PathSpec, cauchy_derivative
from univalens.riccati import (CensusVerdict, ExactMobius, FiberKind, Mobius, RiccatiEq, chordal_distance,
                               classify_fiber, common_fixed_points_exact, fixed_point_census, flip, flip_inverse,
                               forbid_check, loop_monodromy, model_field, monodromy, wittich_equation, wittich_loops,
                               wittich_solution)
from univalens.riccati.fibers import VARS

cplx = st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False)


@st.composite
def mobius(draw):
    m = np.array([[draw(cplx), draw(cplx)], [draw(cplx), draw(cplx)]])
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if abs(det) < 1e-2:
        m = m + np.eye(2) * 2
        det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if abs(det) < 1e-2:
        m = np.eye(2, dtype=complex)
    return Mobius.from_matrix(m)


# --- Moebius maps ---------------------------------------------------------------------


@given(mobius())
def test_fixed_points_are_fixed(m):
    fps = m.fixed_points()
    if fps is None:
        assert m.is_identity()
        return
    for p in fps:
        q = m.apply(p)
        assert chordal_distance(p, q) < 1e-6


@given(mobius(), mobius(), cplx)
def test_composition_acts_as_product(a, b, w):
    lhs = (a @ b).apply(w)
    rhs = a.apply(b.apply(w))
    assert chordal_distance(lhs, rhs) < 1e-7


@given(mobius())
def test_inverse_and_sign_lifts(m):
    assert (m @ m.inverse()).is_identity(1e-8)
    plus, minus = m.lifts()
    assert np.allclose(plus, -minus)
    assert abs(np.linalg.det(plus) - 1) < 1e-9


def test_infinity_handling():
    t = Mobius.translation(2)
    assert is_inf(t.apply(INF))
    inv = Mobius.from_matrix([[0, 1], [1, 0]])
    assert is_inf(inv.apply(0)) and inv.apply(INF) == 0


def test_kinds():
    assert Mobius.identity().kind() == "identity"
    assert Mobius.translation(1).kind() == "parabolic"
    assert Mobius.scaling(cmath.exp(0.7j)).kind() == "elliptic"
    assert Mobius.scaling(3).kind() == "loxodromic"


# --- exact threshold (three fixed points force the identity) ------------------------------


small = st.integers(-3, 3)


@st.composite
def exact_maps(draw):
    choice = draw(st.sampled_from(["identity", "random", "fixing", "scalar"]))
    if choice == "identity":
        return ExactMobius(1, 0, 0, 1)
    if choice == "scalar":
        k = draw(small.filter(bool))
        return ExactMobius(k, 0, 0, k)
    if choice == "fixing":
        # conjugate of a diagonal map by an integer matrix: shares fixed points with its siblings
        k = draw(st.integers(1, 4))
        return ExactMobius(1 + k, 0, 0, 1)
    a, b, c, d = (draw(small) for _ in range(4))
    if a * d - b * c == 0:
        return ExactMobius(1, 1, 0, 1)
    return ExactMobius(a, b, c, d)


@settings(max_examples=200)
@given(st.lists(exact_maps(), min_size=2, max_size=3))
def test_three_common_fixed_points_force_identity(maps):
    fs = common_fixed_points_exact(maps)
    if fs.everything or fs.count >= 3:
        assert all(m.is_identity() for m in maps)
    for p in fs.points:
        assert all(m.fixes(p) for m in maps)


def test_exact_fixed_sets():
    assert common_fixed_points_exact([ExactMobius(1, 1, 0, 1)]).count == 1  # parabolic fixes infinity
    assert common_fixed_points_exact([ExactMobius(2, 0, 0, 1)]).count == 2
    assert common_fixed_points_exact([ExactMobius(2, 0, 0, 1), ExactMobius(1, 1, 0, 1)]).count == 1
    assert common_fixed_points_exact([ExactMobius(3, 0, 0, 3)]).everything


# --- monodromy ---------------------------------------------------------------------------


def _loop_map(eq, loop):
    return loop_monodromy(eq, loop).map


def test_rotation_monodromy():
    # w' = w/(3t): w = c t^(1/3), the loop around 0 multiplies by exp(2 pi i/3)
    eq = RiccatiEq.parse("0", "1/(3*t)", "0")
    m = _loop_map(eq, PathSpec.circle(0, 1))
    assert m.close_to(Mobius.scaling(cmath.exp(2j * cmath.pi / 3)), 1e-8)


def test_representation_property():
    eq = RiccatiEq.parse("1/t", "0", "1/(t-1)")
    base = 0.5 + 0.5j
    g1 = PathSpec.lasso(base, 0, 0.25)
    g2 = PathSpec.lasso(base, 1, 0.25)
    m1, m2 = _loop_map(eq, g1), _loop_map(eq, g2)
    m12 = _loop_map(eq, g1.then(g2))
    assert m12.close_to(m2 @ m1, 1e-7)
    assert not (m1 @ m2).close_to(m2 @ m1, 1e-3)  # the group is not abelian


def test_homotopic_loops_same_monodromy():
    eq = RiccatiEq.parse("1/t", "0", "1/(t-1)")
    a = _loop_map(eq, PathSpec.lasso(-0.9, 0, 0.2))
    b = _loop_map(eq, PathSpec.lasso(-0.9, 0, 0.45))
    assert a.close_to(b, 1e-7)


def test_monodromy_records_errors_and_det():
    rep = monodromy(wittich_equation(), wittich_loops())
    assert len(rep.maps) == 4
    assert max(rep.det_defects) <= 1e-6
    assert all(e >= 0 for e in rep.error_estimates)


@pytest.mark.parametrize("c", [0.3, 1 + 1j, -2j])
def test_wittich_solutions_solve_the_equation(c):
    eq = wittich_equation()
    w = wittich_solution(c)
    for t in [0.4 + 0.2j, 0.7 - 0.3j, -0.5 + 0.6j]:
        lhs = cauchy_derivative(lambda s: np.array([w(s)]), t)[0]
        assert abs(lhs - eq.rhs(t, w(t))) < 1e-8 * max(1, abs(lhs))


def test_equation_json_round_trip():
    eq = wittich_equation()
    again = RiccatiEq.from_json(eq.to_json())
    for t in [0.3 + 0.2j, -0.7j]:
        assert abs(again.rhs(t, 0.5) - eq.rhs(t, 0.5)) < 1e-12


# --- fibers and flips ------------------------------------------------------------------------


@pytest.mark.parametrize("field, label", [
    ("(z, 3*i*w)", "NonDegenerateNonParabolic(3*i)"),
    ("(z, 1)", "NonDegenerateParabolic"),
    ("(z, w/2)", "Dicritical(1/2)"),
    ("(z, -w/2)", "Dicritical(1/2)"),
    ("(z, 7*w/3)", "Dicritical(1/3)"),
    ("(z^2, w*(w-1))", "Semidegenerate"),
    ("(z^2, w^2+z)", "Nilpotent"),
    ("(z, w+z)", "NonDegenerateParabolic"),
    ("(1, w)", "Transverse"),
])
def test_fiber_labels(field, label):
    assert classify_fiber(field).label() == label


def test_integer_lambda_without_resonance_is_transverse():
    fc = classify_fiber("(z, 2*w)")
    assert fc.kind == FiberKind.TRANSVERSE and fc.notes


def test_dicritical_flip_count():
    fc = classify_fiber("(z, 7*w/3)")
    assert fc.flips_to_model == -2 and fc.multiplicity == 3


def test_fiber_form_errors():
    from univalens.riccati import FiberFormError
    with pytest.raises(FiberFormError):
        classify_fiber("(z + w, w)")
    with pytest.raises(FiberFormError):
        classify_fiber("(z, w^3)")


def test_nonparabolic_monodromy_is_exact_rotation():
    fc = classify_fiber("(z, (1/3+i)*w)")
    lam = complex(GaussRat(Fraction(1, 3), 1))
    assert fc.local_monodromy.close_to(Mobius.scaling(cmath.exp(2j * cmath.pi * lam)), 1e-9)


lams = st.builds(lambda a, b, c: GaussRat(Fraction(a, c), b), st.integers(-6, 6), st.integers(1, 4),
                 st.integers(1, 5))


@given(lams)
def test_flip_shifts_parameter(lam):
    vf = model_field("NonDegenerateNonParabolic", lam)
    assert classify_fiber(flip(vf)).lam == lam + 1
    assert classify_fiber(flip(vf, INF)).lam == lam - 1


@given(lams, st.sampled_from([0, INF]))
def test_flip_inverse_round_trip(lam, point):
    vf = model_field("NonDegenerateNonParabolic", lam)
    assert flip_inverse(flip(vf, point), point) == RationalVF2.parse(f"(z, ({lam})*w)", VARS)


# --- census and the forbid check --------------------------------------------------------------


def _rep(maps, periods=None):
    from univalens.riccati.equation import MonodromyRep
    n = len(maps)
    return MonodromyRep([(None, m) for m in maps], periods or [0j] * n, [0.0] * n, [0.0] * n)


def test_census_examples():
    assert fixed_point_census(_rep([Mobius.identity()])).verdict == CensusVerdict.ALL_MAXIMAL
    rot = fixed_point_census(_rep([Mobius.scaling(1j)]))
    assert rot.label() == "ExactlyK(2)"
    both = fixed_point_census(_rep([Mobius.scaling(2), Mobius.translation(1)]))
    assert both.label() == "ExactlyK(1)" and is_inf(both.common_fixed_points[0])


def test_census_kernel_needs_vanishing_period():
    # a nonzero time period keeps the loop out of the kernel; the commutator still enters
    c = fixed_point_census(_rep([Mobius.scaling(2)], [1 + 0j]))
    assert c.verdict in (CensusVerdict.ALL_MAXIMAL, CensusVerdict.NONE_FOUND, CensusVerdict.EXACTLY_K)


def test_census_invariant():
    from univalens.riccati import FixedPointCensus
    with pytest.raises(ValueError):
        FixedPointCensus([0, 1, INF], CensusVerdict.EXACTLY_K, [], [], 1e-7)


def test_forbid_accepts_kind_strings():
    assert forbid_check(["Transverse", "Dicritical"], True, 3).compatible
    assert not forbid_check(["Nilpotent"], True, 3).compatible
    assert forbid_check(["Nilpotent"], False, 3).compatible
    assert forbid_check(["Nilpotent"], True, 2).compatible
