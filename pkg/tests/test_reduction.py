"""Blow-ups, reducedness verdicts and reduction trees."""

import pytest
from hypothesis import given, settings, strategies as st

from univalens.algebra import RationalVF2
from univalens.localmodels import cs_sum_by_global_residue, cs_sum_check
from univalens.reduction import (BlowUpError, ReductionDepthError, Substitution, blow_up_at, check_reduced,
                                 pullback, pushforward, reduce, single_blowup_tree)

CUSP = "(2*y, 3*x^2)"


def test_cusp_oracle():
    # DERIVED: the leaves are y^2 - x^3 = c; the cusp y^2 = x^3 needs three point blow-ups
    # (multiplicity sequence 2, 1, 1) and the last divisor meets the other two transversally,
    # with self-intersections -3, -2, -1 in creation order.
    tree = reduce(RationalVF2.parse(CUSP))
    assert tree.n_blowups == 3
    assert tree.all_reduced()
    assert [e.self_intersection for e in tree.exceptional] == [-3, -2, -1]
    assert all(e.invariant for e in tree.exceptional)
    assert all(s.verdict.vf_reduced for s in tree.terminal_points())
    # the last divisor meets both earlier ones
    assert {(0, 2), (1, 2)} <= set(tree.dual_graph_edges())


def test_cusp_dot_output():
    dot = reduce(RationalVF2.parse(CUSP)).to_dot()
    assert dot.startswith("graph dual {") and "E2 (-1)" in dot


def test_origin_not_reduced_for_nilpotent():
    v = check_reduced(RationalVF2.parse(CUSP), (0, 0))
    assert not v.vf_reduced and str(v.eigen) == "Nilpotent"


@pytest.mark.parametrize("field", ["(x, -y)", "(y, -x)", "(x, -2*y)", "(x, i*y)"])
def test_reduced_linear_points_need_no_blowup(field):
    tree = reduce(RationalVF2.parse(field))
    assert tree.n_blowups == 0 and tree.all_reduced()


def test_radial_field_is_dicritical():
    tree = reduce(RationalVF2.parse("(x, y)"))
    assert tree.n_blowups == 1
    assert not tree.exceptional[0].invariant


def test_resonant_node_two_blowups():
    # x d/dx + 2y d/dy: the first blow-up leaves a radial point in one chart
    tree = reduce(RationalVF2.parse("(x, 2*y)"))
    assert tree.n_blowups == 2
    assert [e.invariant for e in tree.exceptional] == [True, False]


def test_regular_point_refuses_blowup():
    with pytest.raises(BlowUpError):
        blow_up_at(RationalVF2.parse("(1, x)"), (0, 0))
    assert blow_up_at(RationalVF2.parse("(1, x)"), (0, 0), override=True).chart1 is not None


def test_depth_limit():
    with pytest.raises(ReductionDepthError) as info:
        reduce(RationalVF2.parse(CUSP), max_depth=1)
    assert info.value.tree.n_blowups >= 1


coef = st.integers(-3, 3)


@given(st.lists(coef, min_size=6, max_size=6), st.sampled_from([1, 2]))
def test_pullback_pushforward_round_trip(c, chart):
    f = f"({c[0]}*x + {c[1]}*y + {c[2]}*x*y + 1, {c[3]}*x^2 + {c[4]}*y + {c[5]})"
    vf = RationalVF2.parse(f)
    sub = Substitution(chart, (0, 0))
    assert pushforward(pullback(vf, sub), sub) == vf


@settings(max_examples=25)
@given(st.lists(coef, min_size=4, max_size=4).filter(lambda m: m[0] * m[3] - m[1] * m[2] != 0))
def test_linear_fields_reduce_to_reduced_points(m):
    vf = RationalVF2.parse(f"({m[0]}*x + {m[1]}*y, {m[2]}*x + {m[3]}*y)")
    tree = reduce(vf, max_depth=12)
    assert tree.all_reduced()
    assert all(s.verdict.vf_reduced for s in tree.terminal_points())


NON_DICRITICAL = ["(x, 2*y)", "(x, -y)", "(x, 3*y)", "(x, x+y)", "(x+y^2, -y)", "(x, -2*y+x^2)",
                  "(y+x^2, -x+y^2)", "(2*x, -3*y)", "(x^2-y^2, 2*x*y)", "(x^2+y^2, x*y)"]


@pytest.mark.parametrize("field", NON_DICRITICAL)
def test_camacho_sad_two_routes_agree(field):
    tree = single_blowup_tree(RationalVF2.parse(field), (0, 0))
    assert cs_sum_check(tree, 0).total == cs_sum_by_global_residue(tree, 0) == -1
