"""Seidenberg reduction by point blow-ups and the reduced-vector-field test.

The foliation of a field is read from its saturation.  A singular point is
*Seidenberg reduced* when its linear part has two nonzero eigenvalues whose
ratio is not a positive rational, or exactly one nonzero eigenvalue.  The
vector field is *reduced* when, in addition, the zero/pole divisor together
with the local separatrices (or the integral curve, at a regular point)
has normal crossings.

Blow-up charts use the substitutions ``(x, y) -> (a + x, b + x y)`` (chart 1,
exceptional curve ``{x = 0}``) and ``(x, y) -> (a + x y, b + y)`` (chart 2,
exceptional curve ``{y = 0}``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .algebra import BiPoly, GaussRat, RationalFn2, RationalVF2, ZERO, ONE
from .algebra.fields import EigenClass, EigenKind, Point, as_point, eigen_ratio_class, eigenvector
from .algebra.solve import common_zeros, line_roots
from . import normalform

MAX_DEPTH = 24


class BlowUpError(ValueError):
    pass


class ReductionDepthError(RuntimeError):
    """Raised when the depth cap is hit; carries the partial tree."""

    def __init__(self, message: str, tree: "BlowupTree"):
        super().__init__(message)
        self.tree = tree


# ---------------------------------------------------------------------------
# single blow-up


@dataclass(frozen=True)
class Substitution:
    """One blow-up step expressed in the parent chart's coordinates."""

    kind: int
    center: Point

    def parent_coordinates(self) -> Tuple[BiPoly, BiPoly]:
        a, b = self.center
        x, y = BiPoly.x(), BiPoly.y()
        if self.kind == 1:
            return x + a, x * y + b
        return x * y + a, y + b

    def exceptional_curve(self) -> BiPoly:
        return BiPoly.x() if self.kind == 1 else BiPoly.y()

    def to_json(self) -> dict:
        X, Y = self.parent_coordinates()
        return {"chart_kind": self.kind, "center": [str(self.center[0]), str(self.center[1])],
                "x": X.to_string(), "y": Y.to_string()}


def pullback(vf: RationalVF2, sub: Substitution) -> RationalVF2:
    """Pull ``vf`` back along one blow-up chart."""
    X, Y = sub.parent_coordinates()
    fx, fy = RationalFn2(X), RationalFn2(Y)
    P = vf.px.substitute(fx, fy)
    Q = vf.py.substitute(fx, fy)
    x, y = RationalFn2(BiPoly.x()), RationalFn2(BiPoly.y())
    if sub.kind == 1:
        return RationalVF2(P, (Q - y * P) / x)
    return RationalVF2((P - x * Q) / y, Q)


def pushforward(vf: RationalVF2, sub: Substitution) -> RationalVF2:
    """Inverse of :func:`pullback`, valid away from the exceptional curve."""
    a, b = sub.center
    X = RationalFn2(BiPoly({(1, 0): 1, (0, 0): -a}))
    Y = RationalFn2(BiPoly({(0, 1): 1, (0, 0): -b}))
    if sub.kind == 1:
        inv_x, inv_y = X, Y / X
        P = vf.px.substitute(inv_x, inv_y)
        R = vf.py.substitute(inv_x, inv_y)
        return RationalVF2(P, inv_y * P + inv_x * R)
    inv_x, inv_y = X / Y, Y
    R = vf.px.substitute(inv_x, inv_y)
    Q = vf.py.substitute(inv_x, inv_y)
    return RationalVF2(inv_y * R + inv_x * Q, Q)


@dataclass(frozen=True)
class BlowUpResult:
    chart1: RationalVF2
    chart2: RationalVF2
    center: Point
    invariant: bool

    @property
    def dicritical(self) -> bool:
        return not self.invariant

    @property
    def exceptional(self) -> Tuple[BiPoly, BiPoly]:
        return BiPoly.x(), BiPoly.y()


def blow_up_at(vf: RationalVF2, point, override: bool = False) -> BlowUpResult:
    """Blow up ``vf`` at ``point`` and return both chart pullbacks.

    Without ``override`` the point must be singular for the saturated field.
    """
    p = as_point(point)
    if not override and not vf.saturation.is_singular_at(p):
        raise BlowUpError(f"point {p[0]}, {p[1]} is regular for the foliation; pass override=True")
    c1 = pullback(vf, Substitution(1, p))
    c2 = pullback(vf, Substitution(2, p))
    return BlowUpResult(c1, c2, p, exceptional_invariant(c1, 1))


def exceptional_invariant(chart_vf: RationalVF2, kind: int) -> bool:
    sat = chart_vf.saturation
    if kind == 1:
        return sat.a.restrict_x(0) == []
    return sat.b.restrict_y(0) == []


# ---------------------------------------------------------------------------
# reducedness verdict


@dataclass(frozen=True)
class Witness:
    kind: str
    detail: str
    curve: Optional[BiPoly] = None

    def to_json(self) -> dict:
        return {"kind": self.kind, "detail": self.detail,
                "curve": None if self.curve is None else self.curve.to_string()}


@dataclass(frozen=True)
class ReducednessVerdict:
    foliation_reduced: bool
    vf_reduced: bool
    witnesses: Tuple[Witness, ...] = ()
    singular: bool = False
    eigen: Optional[EigenClass] = None
    notes: Tuple[str, ...] = ()
    inconclusive: bool = False

    def __post_init__(self):
        if self.vf_reduced and not self.foliation_reduced:
            raise ValueError("vf_reduced requires foliation_reduced")

    @property
    def reduced(self) -> bool:
        return self.vf_reduced

    def to_json(self) -> dict:
        return {"foliation_reduced": self.foliation_reduced, "vf_reduced": self.vf_reduced,
                "singular": self.singular, "eigen": None if self.eigen is None else str(self.eigen),
                "witnesses": [w.to_json() for w in self.witnesses], "notes": list(self.notes),
                "inconclusive": self.inconclusive}


def _gradient(f: BiPoly, p: Point) -> Tuple[GaussRat, GaussRat]:
    return f.diff_x().evaluate(*p), f.diff_y().evaluate(*p)


def _parallel(u, v) -> bool:
    return (u[0] * v[1] - u[1] * v[0]).is_zero()


def check_reduced(vf: RationalVF2, point) -> ReducednessVerdict:
    """Decide Seidenberg reducedness and the normal-crossings condition at ``point``."""
    p = as_point(point)
    sat = vf.saturation
    comps = vf.divisor_through(p)
    witnesses: List[Witness] = []
    notes: List[str] = []
    inconclusive = False
    info = []
    for comp in comps:
        gx, gy = _gradient(comp.curve, p)
        smooth = not (gx.is_zero() and gy.is_zero())
        inv = sat.is_invariant(comp.curve)
        tangent = (-gy, gx)
        info.append((comp, smooth, inv, tangent))
        if not smooth:
            witnesses.append(Witness("singular-divisor", "divisor component singular at the point", comp.curve))

    if not sat.is_singular_at(p):
        leaf_dir = sat.at(p)
        non_inv = [c for c in info if not c[2] and c[1]]
        for comp, smooth, inv, tangent in non_inv:
            if _parallel(tangent, leaf_dir):
                witnesses.append(Witness("tangency", "zero/pole curve tangent to the integral curve", comp.curve))
        if len(non_inv) >= 2:
            witnesses.append(Witness("branches", "integral curve and two transverse divisor branches"))
        return ReducednessVerdict(True, not witnesses, tuple(witnesses), False, None, tuple(notes), False)

    J = sat.jacobian(p)
    eig = eigen_ratio_class(J)
    if not eig.seidenberg_reduced:
        witnesses.insert(0, Witness("foliation", f"singularity not reduced: {eig}"))
        return ReducednessVerdict(False, False, tuple(witnesses), True, eig, (), False)

    if eig.kind == EigenKind.ONE_ZERO_NON_NILPOTENT:
        lam = eig.trace
        strong = eigenvector(J, lam)
        weak = eigenvector(J, ZERO)
        for comp, smooth, inv, tangent in info:
            if inv or not smooth:
                continue
            if _parallel(tangent, strong):
                witnesses.append(Witness("tangency", "zero/pole curve tangent to the strong separatrix", comp.curve))
            else:
                order = normalform.JET_ORDER_TANGENCY
                cm = _saddle_node_center(sat, p, J, lam)
                local = normalform.linear_substitute(comp.curve, p, ((weak[0], strong[0]), (weak[1], strong[1])))
                contact = normalform.contact_order(local, cm.h, order)
                if contact is None:
                    inconclusive = True
                    notes.append(f"divisor curve agrees with the formal weak separatrix beyond jet order {order}")
                else:
                    notes.append(f"transverse divisor curve has contact order {contact} with the formal weak separatrix")
    else:
        vecs = None
        for comp, smooth, inv, tangent in info:
            if inv or not smooth:
                continue
            if vecs is None:
                vecs = _eigendirections(J)
            if vecs and any(_parallel(tangent, v) for v in vecs):
                witnesses.append(Witness("tangency", "zero/pole curve tangent to a separatrix", comp.curve))
            else:
                witnesses.append(Witness("branches", "zero/pole curve transverse to both separatrices", comp.curve))
    return ReducednessVerdict(True, not witnesses, tuple(witnesses), True, eig, tuple(notes), inconclusive)


def _eigendirections(J) -> List[Tuple[GaussRat, GaussRat]]:
    from .algebra.fields import eigenvalues_exact
    ev = eigenvalues_exact(J)
    if ev is None:
        return []
    return [eigenvector(J, lam) for lam in ev]


def _saddle_node_center(sat, p, J, lam) -> normalform.CenterManifold:
    weak = eigenvector(J, ZERO)
    strong = eigenvector(J, lam)
    basis = ((weak[0], strong[0]), (weak[1], strong[1]))
    f1, f2 = normalform.field_in_basis(sat.a, sat.b, p, basis)
    order = normalform.JET_ORDER_NORMAL_FORM
    return normalform.center_manifold(f1.truncate(order), f2.truncate(order), lam, order)


# ---------------------------------------------------------------------------
# blow-up tree


@dataclass
class Chart:
    id: int
    parent: Optional[int]
    substitution: Optional[Substitution]
    vf: RationalVF2
    depth: int
    divisor_eqs: Dict[int, BiPoly] = field(default_factory=dict)
    created_divisor: Optional[int] = None

    def transform(self, tree: "BlowupTree") -> List[Substitution]:
        """Substitutions from the root down to this chart."""
        subs, cur = [], self
        while cur.substitution is not None:
            subs.append(cur.substitution)
            cur = tree.charts[cur.parent]
        return list(reversed(subs))

    def to_json(self, tree: "BlowupTree") -> dict:
        return {"id": self.id, "parent": self.parent, "depth": self.depth,
                "transform": [s.to_json() for s in self.transform(tree)],
                "field": self.vf.to_string(),
                "divisors": {str(k): v.to_string() for k, v in sorted(self.divisor_eqs.items())}}


@dataclass
class ExceptionalDivisor:
    id: int
    chart: int
    curve: BiPoly
    self_intersection: int
    invariant: bool

    def to_json(self) -> dict:
        return {"id": self.id, "chart": self.chart, "curve": self.curve.to_string(),
                "self_intersection": self.self_intersection, "invariant": self.invariant}


@dataclass
class SingularPoint:
    chart: int
    point: Point
    status: str  # "Reduced" | "NonReduced"
    verdict: ReducednessVerdict

    def to_json(self) -> dict:
        return {"chart": self.chart, "point": [str(self.point[0]), str(self.point[1])],
                "status": self.status, "verdict": self.verdict.to_json()}


@dataclass
class BlowupTree:
    charts: List[Chart] = field(default_factory=list)
    exceptional: List[ExceptionalDivisor] = field(default_factory=list)
    singular_points: List[SingularPoint] = field(default_factory=list)
    blowups: List[Tuple[int, Point, Tuple[int, int], int]] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def n_blowups(self) -> int:
        return len(self.blowups)

    @property
    def depth(self) -> int:
        return max((c.depth for c in self.charts), default=0)

    def terminal_points(self) -> List[SingularPoint]:
        return [s for s in self.singular_points if s.status == "Reduced"]

    def all_reduced(self) -> bool:
        blown = {(b[0], b[1]) for b in self.blowups}
        return all(s.status == "Reduced" or (s.chart, s.point) in blown for s in self.singular_points)

    def divisor(self, div_id: int) -> ExceptionalDivisor:
        return self.exceptional[div_id]

    def to_json(self) -> dict:
        return {"charts": [c.to_json(self) for c in self.charts],
                "exceptional": [e.to_json() for e in self.exceptional],
                "singular_points": [s.to_json() for s in self.singular_points],
                "blowups": [{"chart": b[0], "center": [str(b[1][0]), str(b[1][1])],
                             "children": list(b[2]), "divisor": b[3]} for b in self.blowups],
                "n_blowups": self.n_blowups, "notes": list(self.notes)}

    def dual_graph_edges(self) -> List[Tuple[int, int]]:
        edges = set()
        for chart in self.charts:
            ids = sorted(chart.divisor_eqs)
            for i, a in enumerate(ids):
                for b in ids[i + 1:]:
                    if _curves_meet(chart.divisor_eqs[a], chart.divisor_eqs[b]):
                        edges.add((a, b))
        return sorted(edges)

    def to_dot(self) -> str:
        lines = ["graph dual {"]
        for e in self.exceptional:
            style = "" if e.invariant else ", style=dashed"
            lines.append(f'  E{e.id} [label="E{e.id} ({e.self_intersection})"{style}];')
        for a, b in self.dual_graph_edges():
            lines.append(f"  E{a} -- E{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _curves_meet(f: BiPoly, g: BiPoly) -> bool:
    try:
        zs = common_zeros(f, g)
    except ValueError:
        return True
    return bool(zs.points or zs.irrational)


def _strict_transform(eq: BiPoly, sub: Substitution) -> Optional[BiPoly]:
    X, Y = sub.parent_coordinates()
    pulled = eq.substitute(X, Y)
    e = sub.exceptional_curve()
    while True:
        q = pulled.exact_div(e)
        if q is None:
            break
        pulled = q
    return None if pulled.is_constant() else pulled


def _root_candidates(vf: RationalVF2, tree: BlowupTree) -> List[Point]:
    sat = vf.saturation
    pts = set()
    zs = common_zeros(sat.a, sat.b)
    pts.update(zs.points)
    for note in zs.irrational:
        tree.notes.append(f"singular points with irrational coordinates excluded: {note}")
    comps = vf.divisor
    for k, comp in enumerate(comps):
        f = comp.curve
        if f.degree >= 2:
            zs = common_zeros(f, f.diff_x()) if not f.diff_x().is_zero() else common_zeros(f, f.diff_y())
            pts.update(p for p in zs.points if f.diff_y().evaluate(*p).is_zero())
        deriv = sat.derivation(f)
        q = deriv.exact_div(f)
        if q is None:
            zs = common_zeros(f, deriv) if not deriv.is_zero() else None
            if zs is not None:
                pts.update(zs.points)
        for other in comps[k + 1:]:
            pts.update(common_zeros(f, other.curve).points)
    return sorted(pts, key=lambda p: (p[0].re, p[0].im, p[1].re, p[1].im))


def _exceptional_candidates(chart: Chart, tree: Optional[BlowupTree] = None) -> List[Point]:
    """Points of the chart's new exceptional curve that need a verdict."""
    sat = chart.vf.saturation
    kind = chart.substitution.kind
    if kind == 2:
        return [(ZERO, ZERO)]
    a0 = sat.a.restrict_x(0)
    b0 = sat.b.restrict_x(0)
    ys = set()
    from .algebra import cas
    g = cas.univariate_gcd(a0, b0)
    roots, notes = line_roots(g)
    ys.update(roots)
    if notes and tree is not None:
        for note in notes:
            tree.notes.append(f"E{chart.created_divisor}: singular points with irrational coordinates excluded: {note}")
    if a0:
        tang, _ = line_roots(a0)
        ys.update(tang)
    for comp in chart.vf.divisor:
        r = comp.curve.restrict_x(0)
        if r:
            rr, _ = line_roots(r)
            ys.update(rr)
    return [(ZERO, y0) for y0 in sorted(ys, key=lambda v: (v.re, v.im))]


def _needs_verdict(vf: RationalVF2, p: Point) -> bool:
    return vf.saturation.is_singular_at(p) or bool(vf.divisor_through(p))


def reduce(vf: RationalVF2, max_depth: int = MAX_DEPTH, points=None) -> BlowupTree:
    """Blow up until every singular point is reduced and divisors cross normally.

    ``points`` restricts the root candidates; by default every Gaussian-rational
    singular point and every divisor point that could violate normal crossings
    is examined.
    """
    if max_depth < 1:
        raise ValueError("max_depth must be at least 1")
    tree = BlowupTree()
    root = Chart(0, None, None, vf, 0)
    tree.charts.append(root)
    cands = _root_candidates(vf, tree) if points is None else [as_point(p) for p in points]
    queue = [(0, p) for p in cands]
    while queue:
        cid, p = queue.pop(0)
        chart = tree.charts[cid]
        if not _needs_verdict(chart.vf, p):
            continue
        verdict = check_reduced(chart.vf, p)
        if verdict.vf_reduced:
            if verdict.singular or verdict.witnesses:
                tree.singular_points.append(SingularPoint(cid, p, "Reduced", verdict))
            elif chart.vf.divisor_through(p):
                pass
            continue
        tree.singular_points.append(SingularPoint(cid, p, "NonReduced", verdict))
        if chart.depth >= max_depth:
            raise ReductionDepthError(f"reduction exceeded max_depth={max_depth}", tree)
        queue.extend(_blow_up_in_tree(tree, chart, p, override=not verdict.singular))
    return tree


def _blow_up_in_tree(tree: BlowupTree, chart: Chart, p: Point, override: bool):
    res = blow_up_at(chart.vf, p, override=override)
    div_id = len(tree.exceptional)
    for d_id, eq in chart.divisor_eqs.items():
        if eq.evaluate(*p).is_zero():
            tree.exceptional[d_id].self_intersection -= 1
    children = []
    for kind, cvf in ((1, res.chart1), (2, res.chart2)):
        sub = Substitution(kind, p)
        eqs = {}
        for d_id, eq in chart.divisor_eqs.items():
            st = _strict_transform(eq, sub)
            if st is not None:
                eqs[d_id] = st
        eqs[div_id] = sub.exceptional_curve()
        child = Chart(len(tree.charts), chart.id, sub, cvf, chart.depth + 1, eqs, div_id)
        tree.charts.append(child)
        children.append(child)
    tree.exceptional.append(ExceptionalDivisor(div_id, children[0].id, BiPoly.x(), -1, res.invariant))
    tree.blowups.append((chart.id, p, (children[0].id, children[1].id), div_id))
    new = []
    for child in children:
        for q in _exceptional_candidates(child, tree):
            new.append((child.id, q))
    return new


def single_blowup_tree(vf: RationalVF2, point, override: bool = False) -> BlowupTree:
    """Tree with exactly one blow-up at ``point``; points on the new curve get verdicts only."""
    p = as_point(point)
    tree = BlowupTree()
    root = Chart(0, None, None, vf, 0)
    tree.charts.append(root)
    verdict = check_reduced(vf, p)
    status = "Reduced" if verdict.vf_reduced else "NonReduced"
    tree.singular_points.append(SingularPoint(0, p, status, verdict))
    for cid, q in _blow_up_in_tree(tree, root, p, override=override or not verdict.singular):
        chart = tree.charts[cid]
        if not _needs_verdict(chart.vf, q):
            continue
        v = check_reduced(chart.vf, q)
        if v.singular or v.witnesses:
            tree.singular_points.append(SingularPoint(cid, q, "Reduced" if v.vf_reduced else "NonReduced", v))
    return tree


def blown_up_centers(tree: BlowupTree):
    return {(b[0], b[1]) for b in tree.blowups}


# ---------------------------------------------------------------------------
# Camacho-Sad index by residue


def cs_index_on_line(vf: RationalVF2, point, axis: str) -> GaussRat:
    """Camacho-Sad index of the invariant line through ``point``.

    ``axis`` is ``"x"`` for the line ``{x = x0}`` and ``"y"`` for ``{y = y0}``.
    With ``A = x a`` on ``{x = 0}`` the index is ``Res_{y=0} a(0,y)/B(0,y) dy``.
    """
    from .algebra import univariate as uni
    x0, y0 = as_point(point)
    sat = vf.saturation
    A, B = sat.a.translate(x0, y0), sat.b.translate(x0, y0)
    if axis == "y":
        A, B = B.swap(), A.swap()
    q = A.exact_div(BiPoly.x())
    if q is None:
        raise ValueError("line is not invariant by the foliation")
    num = q.restrict_x(0)
    den = B.restrict_x(0)
    if not den:
        raise ValueError("line consists of singular points")
    return uni.residue_at(num, den, 0)
