"""Local models of reduced meromorphic vector fields.

A reduced point is matched against the four admissible local forms:

=====================  =========================================  ==========================
kind                   model                                      per-branch (ord, ind, CS)
=====================  =========================================  ==========================
Regular                ``y^q d/dx``                               ``(q, 1, 0)``
FiniteRamification     ``x^p y^q (m x d/dx - n y d/dy)``,         ``x=0: (p, n, -m/n)``
                       ``pm - qn = 1``                            ``y=0: (q, -m, -n/m)``
InfiniteRamification   ``x^p y^q (q x d/dx - p y d/dy) + ...``    ``x=0: (p, inf, -q/p)``
                                                                  ``y=0: (q, inf, -p/q)``
SaddleNode             ``y^q (x d/dx + y^(k+1) d/dy)``            ``y=0: (q, inf, 0)``
=====================  =========================================  ==========================

The sign of ``pm - qn`` depends on which separatrix is called ``x=0``; the
classifier orients the pair so that the determinant is ``+1``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from .algebra import BiPoly, GaussRat, RationalFn2, RationalVF2, ZERO, ONE
from .algebra.fields import EigenKind, as_point, eigenvector
from .common import INF, Infinity, is_inf
from . import normalform
from .reduction import (BlowupTree, blown_up_centers, check_reduced, cs_index_on_line)

IndexValue = Union[Fraction, Infinity]


class NotReducedError(ValueError):
    pass


class LocalKind(str, enum.Enum):
    REGULAR = "Regular"
    FINITE_RAMIFICATION = "FiniteRamification"
    INFINITE_RAMIFICATION = "InfiniteRamification"
    SADDLE_NODE = "SaddleNode"
    NOT_ADMISSIBLE = "NotAdmissible"
    HOLOMORPHIC = "Holomorphic"


@dataclass(frozen=True)
class BranchData:
    label: str
    curve: Optional[BiPoly]
    ord: int
    ind: IndexValue
    cs: Fraction

    def to_json(self) -> dict:
        return {"label": self.label, "curve": None if self.curve is None else self.curve.to_string(),
                "ord": self.ord, "ind": "inf" if is_inf(self.ind) else str(self.ind), "cs": str(self.cs)}


@dataclass(frozen=True)
class LocalModelReport:
    kind: LocalKind
    p: int = 0
    q: int = 0
    m: Optional[int] = None
    n: Optional[int] = None
    k: Optional[int] = None
    branch_data: Tuple[BranchData, ...] = ()
    exactness: str = "exact"
    flags: Tuple[str, ...] = ()
    reason: str = ""

    def __post_init__(self):
        if self.kind == LocalKind.FINITE_RAMIFICATION:
            if not (self.m > 0 and self.n > 0 and abs(self.p * self.m - self.q * self.n) == 1):
                raise ValueError("finite ramification requires m, n > 0 and pm - qn = +-1")
        if self.kind == LocalKind.SADDLE_NODE and (self.k is None or self.k < 0):
            raise ValueError("saddle-node requires k >= 0")

    def branch(self, label: str) -> BranchData:
        for b in self.branch_data:
            if b.label == label:
                return b
        raise KeyError(label)

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "p": self.p, "q": self.q, "m": self.m, "n": self.n, "k": self.k,
                "branches": [b.to_json() for b in self.branch_data], "exactness": self.exactness,
                "flags": list(self.flags), "reason": self.reason}

    def table_rows(self) -> List[Tuple[str, str, str, str, str]]:
        return [(self.kind.value, b.label, str(b.ord), "inf" if is_inf(b.ind) else str(b.ind), str(b.cs))
                for b in self.branch_data]


def _not_admissible(reason: str, p=0, q=0) -> LocalModelReport:
    return LocalModelReport(LocalKind.NOT_ADMISSIBLE, p, q, reason=reason)


# ---------------------------------------------------------------------------
# Siegel indices


@dataclass(frozen=True)
class SiegelIndexPair:
    ind_y0: object
    ind_x0: object


def siegel_indices(p: int, q: int, mu) -> SiegelIndexPair:
    """Ramification indices of the two separatrices of ``x^p y^q (x d/dx + mu y d/dy)``.

    ``mu`` may be a rational or a sympy expression.
    """
    if p == 0 and q == 0:
        raise ValueError("(p, q) must not both vanish")
    try:
        import sympy as sp
        symbolic = isinstance(mu, sp.Basic) and not mu.is_Rational
    except ImportError:  # pragma: no cover
        symbolic = False
    if symbolic:
        s = p + mu * q
        if s == 0:
            return SiegelIndexPair(INF, INF)
        return SiegelIndexPair(-1 / s, -mu / s)
    if isinstance(mu, GaussRat):
        if mu.im:
            raise ValueError("mu must be real")
        mu = mu.re
    mu = Fraction(mu)
    if mu > 0:
        raise ValueError("mu is a positive rational: the singularity is not reduced")
    s = p + mu * q
    if s == 0:
        return SiegelIndexPair(INF, INF)
    return SiegelIndexPair(-1 / s, -mu / s)


# ---------------------------------------------------------------------------
# classification


def _gradient(f: BiPoly, p):
    return f.diff_x().evaluate(*p), f.diff_y().evaluate(*p)


def _along(J, v) -> GaussRat:
    """Eigenvalue of ``J`` on the eigenvector ``v``."""
    w0 = J[0][0] * v[0] + J[0][1] * v[1]
    w1 = J[1][0] * v[0] + J[1][1] * v[1]
    return w0 / v[0] if not v[0].is_zero() else w1 / v[1]


def _real_fraction(z: GaussRat) -> Optional[Fraction]:
    return None if z.im else z.re


def classify_local(vf: RationalVF2, point=(0, 0)) -> LocalModelReport:
    """Match the reduced point against the admissible local forms."""
    p0 = as_point(point)
    verdict = check_reduced(vf, p0)
    if not verdict.vf_reduced:
        raise NotReducedError("run reduction first: " + "; ".join(w.detail for w in verdict.witnesses))
    comps = vf.divisor_through(p0)
    if not comps:
        return LocalModelReport(LocalKind.HOLOMORPHIC)
    sat = vf.saturation
    invariant = [(c, sat.is_invariant(c.curve)) for c in comps]

    if not verdict.singular:
        if any(not inv for _, inv in invariant):
            return _not_admissible("zero/pole curve transverse to the foliation at a regular point")
        (c, _), = invariant
        return LocalModelReport(LocalKind.REGULAR, 0, c.multiplicity,
                                branch_data=(BranchData("leaf", c.curve, c.multiplicity, Fraction(1), Fraction(0)),))

    J = sat.jacobian(p0)
    if verdict.eigen.kind == EigenKind.ONE_ZERO_NON_NILPOTENT:
        return _classify_saddle_node(sat, p0, J, invariant, verdict)
    return _classify_nondegenerate(sat, p0, J, invariant, verdict)


def _classify_saddle_node(sat, p0, J, invariant, verdict) -> LocalModelReport:
    lam = verdict.eigen.trace
    strong = eigenvector(J, lam)
    weak = eigenvector(J, ZERO)
    strong_comp = None
    for c, inv in invariant:
        if not inv:
            return _not_admissible("saddle-node with transverse divisor (divisor not invariant)")
        gx, gy = _gradient(c.curve, p0)
        tangent = (-gy, gx)
        if (tangent[0] * strong[1] - tangent[1] * strong[0]).is_zero():
            strong_comp = c
        else:
            return _not_admissible("saddle-node with transverse divisor (the divisor is the weak separatrix)")
    basis = ((weak[0], strong[0]), (weak[1], strong[1]))
    order = normalform.JET_ORDER_NORMAL_FORM
    f1, f2 = normalform.field_in_basis(sat.a, sat.b, p0, basis)
    cm = normalform.center_manifold(f1.truncate(order), f2.truncate(order), lam, order)
    if cm.kappa is None:
        return _not_admissible(f"saddle-node multiplicity exceeds jet order {order}")
    q = strong_comp.multiplicity
    branches = (BranchData("strong", strong_comp.curve, q, INF, Fraction(0)),)
    return LocalModelReport(LocalKind.SADDLE_NODE, 0, q, None, None, cm.k, branches,
                            exactness="formal", flags=("k from the formal center manifold",))


def _classify_nondegenerate(sat, p0, J, invariant, verdict) -> LocalModelReport:
    trace = J[0][0] + J[1][1]
    seps = []
    for c, inv in invariant:
        gx, gy = _gradient(c.curve, p0)
        v = (-gy, gx)
        seps.append((c.curve, c.multiplicity, _along(J, v), v))
    if len(seps) == 1:
        curve, mult, lam, v = seps[0]
        seps.append((None, 0, trace - lam, None))
    elif len(seps) > 2:
        return _not_admissible("more than two divisor branches at a nondegenerate point")
    # orientation: seps[0] plays y=0 (eigenvalue lam1), seps[1] plays x=0 (eigenvalue lam2)
    seps = _prefer_axes(seps)
    for attempt in range(2):
        (cy, q, lam1, _), (cx, p, lam2, _) = seps
        mu_g = lam2 / lam1
        mu = _real_fraction(mu_g)
        if mu is None:
            return _not_admissible("eigenvalue ratio is not real", p, q)
        if mu > 0:
            return _not_admissible("eigenvalue ratio is a positive rational", p, q)
        if p + mu * q == 0:
            return _infinite(seps, sat, p0)
        n_, m_ = (-mu).numerator, (-mu).denominator
        det = p * m_ - q * n_
        if det == 1:
            return _finite(seps, sat, p0, p, q, m_, n_)
        if det == -1 and attempt == 0:
            seps = [seps[1], seps[0]]
            continue
        return _not_admissible(f"pm - qn = {det} is not +-1", p, q)
    raise AssertionError("orientation loop")  # pragma: no cover


def _prefer_axes(seps):
    """Put a curve ``{y = c}`` in the ``y=0`` slot when that is unambiguous."""
    (c0, *_), (c1, *_) = seps

    def horizontal(c):
        return c is not None and not c.uses_x()

    if horizontal(c1) and not horizontal(c0):
        return [seps[1], seps[0]]
    return list(seps)


def _linearity(sat, p0, seps):
    v_y = seps[0][3]
    v_x = seps[1][3]
    J = sat.jacobian(p0)
    if v_y is None:
        v_y = eigenvector(J, seps[0][2])
    if v_x is None:
        v_x = eigenvector(J, seps[1][2])
    basis = ((v_y[0], v_x[0]), (v_y[1], v_x[1]))
    f1, f2 = normalform.field_in_basis(sat.a, sat.b, p0, basis)
    return f1, f2, normalform.is_linear_foliation(f1, f2, seps[0][2], seps[1][2])


def _finite(seps, sat, p0, p, q, m, n) -> LocalModelReport:
    (cy, _, lam1, _), (cx, _, lam2, _) = seps
    f1, f2, linear = _linearity(sat, p0, seps)
    exactness, flags = "exact", []
    if not linear:
        order = normalform.JET_ORDER_NORMAL_FORM
        jet = normalform.resonant_first_integral(f1.truncate(order + 1), f2.truncate(order + 1), n, m, order)
        if not jet.linearizable_to_order:
            return _not_admissible(f"resonant saddle not linearizable (obstruction in degree {jet.obstruction_degree})", p, q)
        exactness = "formal"
        flags.append(f"formal linearization verified to jet order {order}")
    pair = siegel_indices(p, q, Fraction(-n, m))
    assert pair.ind_x0 == n and pair.ind_y0 == -m
    cs_x = _cs_from_eigen(lam1, lam2)
    cs_y = _cs_from_eigen(lam2, lam1)
    assert cs_x == Fraction(-m, n) and cs_y == Fraction(-n, m)
    branches = (BranchData("x=0", cx, p, Fraction(n), cs_x), BranchData("y=0", cy, q, Fraction(-m), cs_y))
    return LocalModelReport(LocalKind.FINITE_RAMIFICATION, p, q, m, n, None, branches, exactness, tuple(flags))


def _infinite(seps, sat, p0) -> LocalModelReport:
    (cy, q, lam1, _), (cx, p, lam2, _) = seps
    _, _, linear = _linearity(sat, p0, seps)
    flags = []
    if not linear:
        flags.append("higher-order terms accepted: both separatrices and divisor orders preserved")
    cs_x = _cs_from_eigen(lam1, lam2)
    cs_y = _cs_from_eigen(lam2, lam1)
    assert cs_x == Fraction(-q, p) and cs_y == Fraction(-p, q)
    branches = (BranchData("x=0", cx, p, INF, cs_x), BranchData("y=0", cy, q, INF, cs_y))
    return LocalModelReport(LocalKind.INFINITE_RAMIFICATION, p, q, None, None, None, branches,
                            "exact" if linear else "formal", tuple(flags))


def _cs_from_eigen(transverse: GaussRat, along: GaussRat) -> Fraction:
    r = transverse / along
    if r.im:
        raise ValueError("complex Camacho-Sad index")
    return r.re


# ---------------------------------------------------------------------------
# literal models


def table_model(kind, p: int = 0, q: int = 0, m: Optional[int] = None, n: Optional[int] = None,
                k: Optional[int] = None) -> RationalVF2:
    """The literal normal form of the given kind, centered at the origin."""
    kind = LocalKind(kind)
    x, y = RationalFn2(BiPoly.x()), RationalFn2(BiPoly.y())
    if kind == LocalKind.REGULAR:
        return RationalVF2(y ** q, 0)
    if kind == LocalKind.FINITE_RAMIFICATION:
        h = x ** p * y ** q
        return RationalVF2(h * x * m, h * y * (-n))
    if kind == LocalKind.INFINITE_RAMIFICATION:
        h = x ** p * y ** q
        return RationalVF2(h * x * q, h * y * (-p))
    if kind == LocalKind.SADDLE_NODE:
        h = y ** q
        return RationalVF2(h * x, h * y ** (k + 1))
    raise ValueError(f"no literal model for {kind}")


def model_from_report(report: LocalModelReport) -> RationalVF2:
    return table_model(report.kind, report.p, report.q, report.m, report.n, report.k)


# ---------------------------------------------------------------------------
# Camacho-Sad sums over exceptional divisors


@dataclass(frozen=True)
class CSContribution:
    chart: int
    point: Tuple[GaussRat, GaussRat]
    cs: Fraction


@dataclass(frozen=True)
class CSSum:
    divisor: int
    total: Fraction
    self_intersection: int
    contributions: Tuple[CSContribution, ...]

    @property
    def matches(self) -> bool:
        return self.total == self.self_intersection


class CSSumError(ValueError):
    pass


def cs_sum_check(tree: BlowupTree, divisor: int) -> CSSum:
    """Sum the Camacho-Sad indices of the terminal singular points on an exceptional divisor."""
    div = tree.divisor(divisor)
    if not div.invariant:
        raise CSSumError(f"E{divisor} is dicritical: not invariant by the foliation")
    bad = [n for n in tree.notes if n.startswith(f"E{divisor}:")]
    if bad:
        raise CSSumError("unclassifiable singularities on divisor: " + "; ".join(bad))
    centers = blown_up_centers(tree)
    contribs = []
    total = Fraction(0)
    for sp in tree.singular_points:
        if (sp.chart, sp.point) in centers or not sp.verdict.singular:
            continue
        chart = tree.charts[sp.chart]
        eq = chart.divisor_eqs.get(divisor)
        if eq is None or not eq.evaluate(*sp.point).is_zero():
            continue
        if eq.degree != 1 or (eq.uses_x() and eq.uses_y()):
            raise CSSumError(f"E{divisor} is not a coordinate line in chart {sp.chart}")
        axis = "x" if not eq.uses_y() else "y"
        cs = cs_index_on_line(chart.vf, sp.point, axis)
        if cs.im:
            raise CSSumError("complex Camacho-Sad index")
        contribs.append(CSContribution(sp.chart, sp.point, cs.re))
        total += cs.re
    return CSSum(divisor, total, div.self_intersection, tuple(contribs))


def cs_sum_by_global_residue(tree: BlowupTree, divisor: int) -> Fraction:
    """Independent route for a divisor never blown up again.

    In the chart-1 coordinates the exceptional line is ``{x = 0}``; the sum of
    all finite residues of ``a(0,y)/B(0,y) dy`` (including points with
    irrational coordinates) plus the index at the chart-2 origin is the total.
    """
    from .algebra import univariate as uni
    div = tree.divisor(divisor)
    if not div.invariant:
        raise CSSumError(f"E{divisor} is dicritical: not invariant by the foliation")
    c1 = tree.charts[div.chart]
    c2 = tree.charts[div.chart + 1]
    sat = c1.vf.saturation
    a = sat.a.exact_div(BiPoly.x())
    num, den = a.restrict_x(0), sat.b.restrict_x(0)
    finite_sum = -uni.residue_at_infinity(num, den)
    origin = ZERO
    if c2.vf.saturation.is_singular_at((ZERO, ZERO)):
        origin = cs_index_on_line(c2.vf, (0, 0), "y")
    total = finite_sum + origin
    if total.im:
        raise CSSumError("complex Camacho-Sad sum")
    return total.re
