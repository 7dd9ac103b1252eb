"""Affine structures on curves and univalence of one-dimensional fields.

Charts are handled through their logarithmic derivatives, which are
rational even for multivalued charts: a chart ``c`` is stored as
``c'(z) = z^alpha R(z)`` with ``R`` rational, so ``c''/c' = alpha/z + R'/R``.
The root chart ``z^(1/n)`` has ``alpha = 1/n - 1`` and the logarithm has
``alpha = -1``.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from .algebra import BiPoly, GaussRat, RationalFn2, ZERO, ONE
from .algebra import cas
from .algebra import univariate as uni
from .algebra.parsing import parse_number, parse_rational
from .common import INF, Infinity, is_inf


def _univariate(r: RationalFn2) -> Tuple[list, list]:
    """Coefficient lists of a rational function of the first variable only."""
    if r.num.uses_y() or r.den.uses_y():
        raise ValueError("expected a function of one variable")
    return _coeffs(r.num), _coeffs(r.den)


def _coeffs(p: BiPoly) -> list:
    out = [ZERO] * (p.degree_x() + 1)
    for (i, _), c in p.items():
        out[i] = c
    return uni.trim(out)


def _from_coeffs(c: Sequence[GaussRat]) -> BiPoly:
    return BiPoly({(i, 0): v for i, v in enumerate(c)})


def _z() -> RationalFn2:
    return RationalFn2(BiPoly.x())


# ---------------------------------------------------------------------------
# charts and defect forms


@dataclass(frozen=True)
class Chart1D:
    """A (possibly multivalued) chart with derivative ``z^alpha * rational``."""

    alpha: GaussRat
    rational: RationalFn2
    label: str = ""

    @classmethod
    def from_function(cls, f: Union[str, RationalFn2]) -> "Chart1D":
        if isinstance(f, str):
            f = parse_rational(f, ("z", "w")) if "z" in f else parse_rational(f, ("x", "y"))
        d = f.diff_x()
        if d.is_zero():
            raise ValueError("chart has identically vanishing derivative")
        return cls(ZERO, d, f.to_string("z", "w"))

    @classmethod
    def root(cls, n: int) -> "Chart1D":
        """The chart ``z^(1/n)``."""
        return cls(GaussRat(Fraction(1, n) - 1), RationalFn2(BiPoly.const(Fraction(1, n))), f"z^(1/{n})")

    @classmethod
    def power(cls, a) -> "Chart1D":
        a = GaussRat.coerce(a)
        if a.is_zero():
            return cls.log()
        return cls(a - 1, RationalFn2(BiPoly.const(a)), f"z^({a})")

    @classmethod
    def log(cls) -> "Chart1D":
        return cls(GaussRat(-1), RationalFn2(BiPoly.const(1)), "log(z)")

    def log_derivative(self) -> RationalFn2:
        z = _z()
        out = self.rational.diff_x() / self.rational
        if not self.alpha.is_zero():
            out = out + RationalFn2(BiPoly.const(self.alpha)) / z
        return out


def as_chart(c) -> Chart1D:
    if isinstance(c, Chart1D):
        return c
    if isinstance(c, (str, RationalFn2)):
        return Chart1D.from_function(c)
    if isinstance(c, BiPoly):
        return Chart1D.from_function(RationalFn2(c))
    raise TypeError(f"cannot interpret {c!r} as a chart")


@dataclass(frozen=True)
class DefectForm:
    """The one-form ``form(z) dz`` with its residues at rational poles."""

    form: RationalFn2
    residues: Tuple[Tuple[GaussRat, GaussRat], ...]
    residue_at_infinity: GaussRat
    notes: Tuple[str, ...] = ()

    def residue(self, point=0) -> GaussRat:
        point = GaussRat.coerce(point)
        for p, r in self.residues:
            if p == point:
                return r
        return ZERO

    def is_zero(self) -> bool:
        return self.form.is_zero()

    def __add__(self, other: "DefectForm") -> "DefectForm":
        return make_defect(self.form + other.form)

    def to_json(self) -> dict:
        return {"form": self.form.to_string("z", "w"),
                "residues": [[str(p), str(r)] for p, r in self.residues],
                "residue_at_infinity": str(self.residue_at_infinity), "notes": list(self.notes)}


def make_defect(form: RationalFn2) -> DefectForm:
    num, den = _univariate(form)
    residues, notes = [], []
    if len(den) > 1:
        roots, left = cas.univariate_roots(den)
        for p, _ in roots:
            r = uni.residue_at(num, den, p)
            residues.append((p, r))
        notes.extend(f"{k} pole(s) algebraic of degree {d}" for d, k in left)
    res_inf = uni.residue_at_infinity(num, den) if num else ZERO
    return DefectForm(form, tuple(residues), res_inf, tuple(notes))


def defect_between(chart1, chart2) -> DefectForm:
    """The form ``h''/h' dz`` for ``h = chart2 o chart1^-1``, pulled back to the common coordinate.

    By the chain rule this equals ``(c2''/c2' - c1''/c1') dz`` and needs no inverse.
    """
    c1, c2 = as_chart(chart1), as_chart(chart2)
    return make_defect(c2.log_derivative() - c1.log_derivative())


def pushdown_residue(residue_on_cover: GaussRat, n: int) -> GaussRat:
    """Residue downstairs of a form whose pullback by ``z = s^n`` has the given residue."""
    return GaussRat.coerce(residue_on_cover) / n


# ---------------------------------------------------------------------------
# ramification index


@dataclass(frozen=True)
class RamificationIndex:
    value: Union[Fraction, GaussRat, Infinity]

    @property
    def is_infinite(self) -> bool:
        return is_inf(self.value)

    def __eq__(self, other):
        if isinstance(other, RamificationIndex):
            return self.value == other.value
        if is_inf(other):
            return self.is_infinite
        if self.is_infinite:
            return False
        return self.value == other

    def __hash__(self):
        return hash(self.value)

    def __str__(self):
        return "inf" if self.is_infinite else str(self.value)


def ramification_index(residue) -> RamificationIndex:
    """``1/(residue + 1)``, infinite exactly when the residue is ``-1``."""
    r = GaussRat.coerce(residue)
    s = r + 1
    if s.is_zero():
        return RamificationIndex(INF)
    v = s.inverse()
    return RamificationIndex(v.re if v.is_real() else v)



def structure_index(chart, point=0) -> RamificationIndex:
    """Ramification index of the affine structure of ``chart`` at ``point`` (``INF`` allowed).

    At a finite point the reference is the coordinate ``z``.  At infinity the
    reference is ``w = 1/z``; since ``z = 1/w`` has ``z''/z' = -2/w``, the
    residue of the defect against ``z`` is shifted by ``-2``.
    """
    d = defect_between(Chart1D.from_function("z"), chart)
    if is_inf(point):
        return ramification_index(d.residue_at_infinity - 2)
    return ramification_index(d.residue(point))

# ---------------------------------------------------------------------------
# orbifold signatures

IndexLike = Union[int, Infinity]

_ELLIPTIC = {(2, 3, 6), (2, 4, 4), (3, 3, 3), (2, 2, 2, 2)}


@dataclass(frozen=True)
class OrbifoldSignature:
    genus: int
    indices: Tuple[IndexLike, ...] = ()

    def __post_init__(self):
        if self.genus not in (0, 1):
            raise ValueError("genus must be 0 or 1")
        for v in self.indices:
            if not is_inf(v) and (not isinstance(v, int) or v == 0):
                raise ValueError(f"index {v!r} must be a nonzero integer or infinity")

    @classmethod
    def parse(cls, genus: int, text: str) -> "OrbifoldSignature":
        vals = []
        for tok in filter(None, (t.strip() for t in text.split(","))):
            vals.append(INF if tok.lower() in ("inf", "infinity", "oo", "∞") else int(tok))
        return cls(genus, tuple(vals))

    def essential(self) -> Tuple[IndexLike, ...]:
        """Indices with the regular value ``1`` removed, in a canonical order."""
        fin = sorted(v for v in self.indices if not is_inf(v) and v != 1)
        infs = [INF] * sum(1 for v in self.indices if is_inf(v))
        return tuple(fin) + tuple(infs)


@dataclass(frozen=True)
class SignatureVerdict:
    uniformizable: bool
    label: str

    def __bool__(self):
        return self.uniformizable


def uniformizable_signature(sig: OrbifoldSignature) -> SignatureVerdict:
    """Match a signature against the uniformizable compact list."""
    ess = sig.essential()
    if sig.genus == 1:
        if not ess:
            return SignatureVerdict(True, "elliptic or hyperbolic torus")
        return SignatureVerdict(False, "singular affine structures on a torus are not uniformizable")
    fin = [v for v in ess if not is_inf(v)]
    n_inf = len(ess) - len(fin)
    if n_inf == 0 and len(fin) == 1 and fin[0] == -1:
        return SignatureVerdict(True, "rational orbifold (tautological, n = 1)")
    if n_inf == 0 and len(fin) == 2 and fin[0] == -fin[1]:
        return SignatureVerdict(True, f"rational orbifold (n = {abs(fin[0])})")
    if n_inf == 2 and not fin:
        return SignatureVerdict(True, "parabolic cylinder")
    if n_inf == 1 and fin == [2, 2]:
        return SignatureVerdict(True, "parabolic (2,2,inf)")
    if n_inf == 0 and tuple(fin) in _ELLIPTIC:
        return SignatureVerdict(True, "elliptic orbifold (" + ",".join(map(str, fin)) + ")")
    if not ess:
        return SignatureVerdict(False, "the rational curve carries no affine structure without singularities")
    return SignatureVerdict(False, "not in the uniformizable list")


def orbifold_euler_defect(sig: OrbifoldSignature) -> Fraction:
    """``sum (1 - 1/p_i)`` with ``1`` for each infinite index."""
    total = Fraction(0)
    for v in sig.essential():
        total += 1 if is_inf(v) else 1 - Fraction(1, v)
    return total


# ---------------------------------------------------------------------------
# univalence of f(z) d/dz on the projective line


class UnivalenceStatus(str, enum.Enum):
    MAXIMAL = "Maximal"
    NOT_MAXIMAL = "NotMaximal"
    LOWER_BOUND = "LowerBoundDeterminations"
    INFINITE = "InfiniteDeterminations"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class UnivalenceVerdict1D:
    status: UnivalenceStatus
    determinations_lower_bound: int = 1
    reasons: Tuple[str, ...] = ()
    zeros: Tuple[Tuple[str, int], ...] = ()
    poles: Tuple[Tuple[str, int], ...] = ()

    def to_json(self) -> dict:
        return {"status": self.status.value, "determinations_lower_bound": self.determinations_lower_bound,
                "reasons": list(self.reasons), "zeros": [list(z) for z in self.zeros],
                "poles": [list(p) for p in self.poles]}


def _factor_degrees(coeffs):
    """List of (label, multiplicity, degree) for the irreducible factors."""
    if len(coeffs) <= 1:
        return []
    roots, left = cas.univariate_roots(coeffs)
    out = [(f"z={r}", k, 1) for r, k in roots]
    out += [(f"algebraic of degree {d}", k, d) for d, k in left]
    return out


def univalence_1d(f) -> UnivalenceVerdict1D:
    """Decide single-valuedness of the solutions of ``f(z) d/dz`` on the projective line."""
    if isinstance(f, str):
        f = parse_rational(f, ("z", "w")) if "z" in f else parse_rational(f, ("x", "y"))
    f = RationalFn2.coerce(f)
    if f.is_zero():
        raise ValueError("vector field is identically zero")
    num, den = _univariate(f)
    order_inf = 2 - (len(num) - 1) + (len(den) - 1)
    zeros = [(lab, k * d) for lab, k, d in _factor_degrees(num)]
    poles = [(lab, k * d) for lab, k, d in _factor_degrees(den)]
    zero_info = [(lab, k, d) for lab, k, d in _factor_degrees(num)]
    if order_inf > 0:
        zeros.append(("z=inf", order_inf))
        zero_info.append(("z=inf", order_inf, 1))
    elif order_inf < 0:
        poles.append(("z=inf", -order_inf))
    n_zeros = sum(k for _, k in zeros)
    max_pole = max((k for _, k in poles), default=0)
    if poles:
        bound = max(2, n_zeros // 2, max_pole + 1)
        reasons = ["a strictly meromorphic field on a curve has no single-valued solution",
                   f"a pole of order {max_pole} forces {max_pole + 1} local determinations"]
        if n_zeros > 2:
            reasons.append(f"{n_zeros} zeros force at least {n_zeros // 2} determinations")
        return UnivalenceVerdict1D(UnivalenceStatus.NOT_MAXIMAL, bound, tuple(reasons), tuple(zeros), tuple(poles))
    if n_zeros > 2:  # pragma: no cover - impossible for holomorphic fields on P^1
        return UnivalenceVerdict1D(UnivalenceStatus.NOT_MAXIMAL, max(2, n_zeros // 2),
                                   ("more than two zeros",), tuple(zeros), ())
    simple = [z for z in zero_info if z[1] == 1]
    if len(simple) == 2:
        lams = _simple_zero_eigenvalues(num, den, simple)
        if lams is None:
            return UnivalenceVerdict1D(UnivalenceStatus.INDETERMINATE, 1,
                                       ("eigenvalues at the simple zeros are not Gaussian-rational",), tuple(zeros), ())
        l1, l2 = lams
        ratio = l2 / l1
        if ratio.is_real() and ratio.re < 0:
            return UnivalenceVerdict1D(UnivalenceStatus.MAXIMAL, 1,
                                       (f"two simple zeros with eigenvalues {l1}, {l2} of opposite sign",
                                        "holomorphic on the projective line, hence complete"), tuple(zeros), ())
        return UnivalenceVerdict1D(UnivalenceStatus.INDETERMINATE, 1,
                                   (f"eigenvalue ratio {l2 / l1} outside the certified region",), tuple(zeros), ())
    return UnivalenceVerdict1D(UnivalenceStatus.MAXIMAL, 1,
                               ("one double zero, the z^2 d/dz model", "holomorphic on the projective line, hence complete"),
                               tuple(zeros), ())


def _simple_zero_eigenvalues(num, den, simple):
    lams = []
    for lab, _, deg in simple:
        if deg != 1:
            return None
        if lab == "z=inf":
            # w = 1/z:  dw/dt = -w^2 f(1/w);  a simple zero at w = 0 has eigenvalue -lc(num)/lc(den)
            lams.append(-(num[-1] / den[-1]))
        else:
            z0 = parse_number(lab[2:])
            dnum = uni.derivative(num)
            lams.append(uni.evaluate(dnum, z0) / uni.evaluate(den, z0))
    return lams
