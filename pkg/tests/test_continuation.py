"""Numerical continuation: oracles, refinement, path algebra, escapes and classical solutions."""

import cmath

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import solve_ivp

from univalens.algebra import RationalVF2
from univalens.continuation import (NumericField, Outcome, PathKind, PathSpec, Weierstrass, WeierstrassPole,
                                    continue_solution, loads_paths, verify_solution)
from univalens.continuation.classical import (e8_field, e8_sample_times, e8_solution, e8_surface_residual,
                                              power_solution, briot_bouquet_field, q_power_corrected)
from univalens.continuation.integrator import tail_converges
from univalens.continuation.weierstrass import laurent_coefficients

ANHARMONIC = RationalVF2.parse("(y, -x + x^2/5)")


def scipy_endpoint(rhs, y0, path, rtol=1e-13):
    """Oracle: DOP853 on each segment in the real parameter s in [0, 1]."""
    y = np.asarray(y0, dtype=complex)
    for a, b in path.segments():
        sol = solve_ivp(lambda s, u: (b - a) * np.asarray(rhs(a + s * (b - a), u), dtype=complex), (0.0, 1.0), y,
                        method="DOP853", rtol=rtol, atol=1e-14)
        y = sol.y[:, -1]
    return y


def anharmonic_rhs(t, u):
    return [u[1], -u[0] + u[0] ** 2 / 5]


small_c = st.complex_numbers(max_magnitude=0.6, allow_nan=False, allow_infinity=False)


@settings(max_examples=15)
@given(small_c, small_c, st.complex_numbers(min_magnitude=0.3, max_magnitude=1.5, allow_nan=False,
                                           allow_infinity=False))
def test_against_scipy_oracle(x0, y0, t1):
    path = PathSpec.segment(0, t1)
    r = continue_solution(ANHARMONIC, (x0, y0), path, 1e-11)
    assert r.outcome == Outcome.COMPLETED
    ref = scipy_endpoint(anharmonic_rhs, (x0, y0), path)
    assert np.max(np.abs(np.array(r.endpoint) - ref)) < 1e-8


def test_refinement():
    path = PathSpec.polyline([0, 1 + 0.5j, 0.5 + 1j])
    prev = None
    for tol in (1e-6, 1e-7, 1e-8, 1e-9):
        r = continue_solution(ANHARMONIC, (0.3, 0.1j), path, tol)
        fine = continue_solution(ANHARMONIC, (0.3, 0.1j), path, tol / 10)
        assert np.max(np.abs(np.array(r.endpoint) - np.array(fine.endpoint))) < 5 * tol
        assert fine.error_estimate <= r.error_estimate
        if prev is not None:
            assert r.error_estimate <= prev
        prev = r.error_estimate


def test_concatenation():
    g1, g2 = PathSpec.segment(0, 0.7 + 0.2j), PathSpec.segment(0.7 + 0.2j, 1.2 - 0.4j)
    whole = continue_solution(ANHARMONIC, (0.2, 0.4), g1.then(g2), 1e-11)
    first = continue_solution(ANHARMONIC, (0.2, 0.4), g1, 1e-11)
    second = continue_solution(ANHARMONIC, first.endpoint, g2, 1e-11)
    assert np.max(np.abs(np.array(whole.endpoint) - np.array(second.endpoint))) < 1e-9


def test_reversibility():
    path = PathSpec.polyline([0, 0.8j, 1 + 0.8j])
    out = continue_solution(ANHARMONIC, (0.25, -0.1), path, 1e-11)
    back = continue_solution(ANHARMONIC, out.endpoint, path.reversed().translated(0), 1e-11)
    assert np.max(np.abs(np.array(back.endpoint) - np.array([0.25, -0.1]))) < 1e-9


def test_homotopy_invariance_around_a_pole():
    # x' = x^2, x(0) = 1 is 1/(1 - t): single-valued, so both sides of t = 1 agree
    vf = RationalVF2.parse("(x^2, 0)")
    above = PathSpec.polyline([0, 1 + 0.5j, 2])
    below = PathSpec.polyline([0, 1 - 0.5j, 2])
    a = continue_solution(vf, (1, 0), above, 1e-11)
    b = continue_solution(vf, (1, 0), below, 1e-11)
    assert abs(a.endpoint[0] - b.endpoint[0]) < 1e-9
    assert abs(a.endpoint[0] - (-1.0)) < 1e-9


def test_homotopy_detects_branching():
    # x' = 1/(2x) has x = sqrt(1 + t); a loop around t = -1 flips the sign
    vf = RationalVF2.parse("(1/(2*x), 0)")
    loop = PathSpec.lasso(0, -1, 0.5)
    r = continue_solution(vf, (1, 0), loop, 1e-11)
    assert abs(r.endpoint[0] + 1) < 1e-8


def test_escape_to_infinity_is_certified():
    r = continue_solution(RationalVF2.parse("(x^2, 0)"), (1, 0), PathSpec.segment(0, 2), 1e-10)
    assert r.outcome == Outcome.ESCAPED
    assert abs(r.time - 1) < 1e-3


def test_escape_to_pole_locus():
    # x' = -1/(x - 1) from x = 0: (x - 1)^2 = 1 - 2t, so x reaches the pole line x = 1 at t = 1/2
    r = continue_solution(RationalVF2.parse("(-1/(x-1), 0)"), (0, 0), PathSpec.segment(0, 1), 1e-10)
    assert r.outcome == Outcome.ESCAPED
    assert abs(r.time - 0.5) < 1e-3


def test_start_on_pole_locus_rejected():
    with pytest.raises(ValueError):
        continue_solution(RationalVF2.parse("(1/x, 0)"), (0, 0), PathSpec.segment(0, 1), 1e-10)


def test_samples_csv():
    r = continue_solution(ANHARMONIC, (0.1, 0), PathSpec.segment(0, 1), 1e-8, keep_samples=True)
    lines = r.samples_csv().strip().splitlines()
    assert lines[0].startswith("t_re,t_im,x_re") and len(lines) > 3


def test_numeric_field_pole_distance():
    nf = NumericField(RationalVF2.parse("(1/(x-2), y)"))
    assert nf.pole_distance(2 + 1e-12, 0) < 1e-9
    assert nf.pole_distance(0, 0) > 0.1


def test_tail_convergence_rule():
    geometric = [0.9 ** k for k in range(400)]
    assert tail_converges(geometric)
    assert not tail_converges([1.0] * 400)
    assert not tail_converges(geometric[:5])  # too few steps to judge
    assert not tail_converges([1.1 ** k for k in range(100)])


# --- paths ---------------------------------------------------------------------------


def test_path_json_round_trip_and_winding():
    loop = PathSpec.circle(1j, 0.5)
    assert loop.is_closed() and loop.kind == PathKind.LOOP
    again = PathSpec.from_json(loop.to_json())
    assert again.waypoints == loop.waypoints
    assert loop.winding_number(1j) == 1 and loop.winding_number(5) == 0
    assert PathSpec.circle(0, 1, clockwise=True).winding_number(0) == -1
    assert len(loads_paths('[{"kind": "lasso", "base": [0, 0], "center": [2, 0], "radius": 0.5}]')) == 1


def test_open_loop_rejected():
    with pytest.raises(ValueError):
        PathSpec((0, 1, 1j), PathKind.LOOP)


# --- Weierstrass function against the Jacobi route (mpmath) --------------------------


def jacobi_wp(g2, g3, z):
    roots = sorted(np.roots([4, 0, -g2, -g3]), key=lambda r: (-r.real, -r.imag))
    e1, e2, e3 = [mpmath.mpc(r) for r in roots]
    k2 = (e2 - e3) / (e1 - e3)
    s = mpmath.sqrt(e1 - e3)
    sn = mpmath.ellipfun("sn", s * z, m=k2)
    return complex(e3 + (e1 - e3) / sn ** 2)


@pytest.mark.parametrize("g2, g3", [(4, 0), (0, 4), (2, 1), (1 + 1j, -0.5)])
def test_weierstrass_matches_jacobi_oracle(g2, g3):
    wp = Weierstrass(g2, g3)
    rng = np.random.default_rng(7)
    w1, w2 = wp.periods
    for _ in range(12):
        a, b = rng.uniform(0.1, 0.9, 2)
        z = a * w1 + b * w2
        assert abs(wp(z) - jacobi_wp(g2, g3, z)) < 1e-8 * max(1, abs(wp(z)))
        assert wp.curve_residual(z) < 1e-9


@pytest.mark.parametrize("g2, g3", [(4, 0), (0, 4), (3, 2)])
def test_weierstrass_periods(g2, g3):
    wp = Weierstrass(g2, g3)
    z = 0.31 + 0.17j
    for w in wp.periods:
        assert abs(wp(z + w) - wp(z)) < 1e-8 * max(1, abs(wp(z)))
    assert abs((wp.periods[1] / wp.periods[0]).imag) > 0


def test_laurent_coefficients_closed_form():
    # with g3 = 0 every third coefficient vanishes; c2 = g2/20, c3 = g3/28, c4 = c2^2/3
    c = laurent_coefficients(4, 0, 6)
    assert abs(c[2] - 0.2) < 1e-15 and abs(c[3]) < 1e-15 and abs(c[4] - 0.04 / 3) < 1e-15


# --- classical solutions ----------------------------------------------------------------


def test_e8_solution_on_surface_and_solving():
    phi = e8_solution()
    times = e8_sample_times()
    assert len(times) == 20
    assert max(e8_surface_residual(phi(t)) for t in times) < 1e-10
    assert verify_solution(phi, e8_field(), times, 1e-8).passed


def test_e8_continuation_matches_closed_form():
    # independent route: integrate the field numerically from phi(t0) and compare with phi(t1)
    phi = e8_solution()
    field = e8_field()
    t0, t1 = -0.3 + 0.1j, -0.1 + 0.3j
    ref = scipy_endpoint(lambda t, u: field(np.asarray(u)), phi(t0), PathSpec.segment(t0, t1))
    assert np.max(np.abs(ref - np.array(phi(t1)))) < 1e-8 * max(1, np.max(np.abs(ref)))


def test_verify_rejects_wrong_solution():
    bad = lambda t: (cmath.sin(t), cmath.cos(t))  # solves (y, -x), not (y, x)
    from univalens.continuation import PolynomialField
    r = verify_solution(bad, PolynomialField(("y", "x"), ("x", "y")), [0.2, 0.5j, 1], 1e-8)
    assert not r.passed


@pytest.mark.parametrize("n", [2, 3, 5])
def test_power_solution_by_continuation(n):
    # independent route for the corrected coefficient: integrate from t = 1 to t = 1.5 + 0.5i
    vf = briot_bouquet_field(q_power_corrected(n))
    t1 = 1.5 + 0.5j
    r = continue_solution(vf, power_solution(n)(1), PathSpec.segment(0, t1 - 1), 1e-11)
    assert np.max(np.abs(np.array(r.endpoint) - np.array(power_solution(n)(t1)))) < 1e-8 * abs(t1) ** n


def test_weierstrass_lattice_points_raise():
    wp = Weierstrass(4, 0)
    with pytest.raises(WeierstrassPole):
        wp(0)
    with pytest.raises(WeierstrassPole):
        wp(wp.periods[0] + wp.periods[1])
    assert abs(wp(1e-4) - 1e8) < 1.0  # P(z) = 1/z^2 + O(z^2)
