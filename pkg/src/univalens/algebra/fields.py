"""Meromorphic vector fields on a plane chart and their basic invariants.

A :class:`RationalVF2` is ``px d/dx + py d/dy``.  Its *saturation* splits it as
``h * (A d/dx + B d/dy)`` with ``A``, ``B`` coprime polynomials: the pair
``(A, B)`` defines the induced foliation and ``h`` carries the divisor of
zeros and poles.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import isqrt
from typing import List, Optional, Sequence, Tuple

from . import cas
from .bipoly import BiPoly
from .gaussrat import GaussRat, ONE, ZERO
from .rational import RationalFn2

Point = Tuple[GaussRat, GaussRat]
Matrix = Tuple[Tuple[GaussRat, GaussRat], Tuple[GaussRat, GaussRat]]


class NotHolomorphicError(ValueError):
    pass


def as_point(point) -> Point:
    return (GaussRat.coerce(point[0]), GaussRat.coerce(point[1]))


@dataclass(frozen=True)
class DivisorComponent:
    """An irreducible curve with a nonzero multiplicity (negative for poles)."""

    curve: BiPoly
    multiplicity: int

    def __post_init__(self):
        if self.multiplicity == 0:
            raise ValueError("divisor multiplicity must be nonzero")

    def to_json(self) -> dict:
        return {"curve": self.curve.to_string(), "multiplicity": self.multiplicity}


@dataclass(frozen=True)
class Saturation:
    """``X = factor * (a d/dx + b d/dy)`` with ``gcd(a, b) = 1``."""

    a: BiPoly
    b: BiPoly
    factor: RationalFn2

    def at(self, point) -> Tuple[GaussRat, GaussRat]:
        x0, y0 = point
        return self.a.evaluate(x0, y0), self.b.evaluate(x0, y0)

    def is_singular_at(self, point) -> bool:
        u, v = self.at(point)
        return u.is_zero() and v.is_zero()

    def derivation(self, f: BiPoly) -> BiPoly:
        """``Y(f) = a f_x + b f_y`` for the saturated field ``Y``."""
        return self.a * f.diff_x() + self.b * f.diff_y()

    def is_invariant(self, curve: BiPoly) -> bool:
        """Whether the irreducible curve ``{curve = 0}`` is a union of leaves."""
        return self.derivation(curve).exact_div(curve) is not None

    def jacobian(self, point) -> Matrix:
        x0, y0 = point
        return ((self.a.diff_x().evaluate(x0, y0), self.a.diff_y().evaluate(x0, y0)),
                (self.b.diff_x().evaluate(x0, y0), self.b.diff_y().evaluate(x0, y0)))


class RationalVF2:
    """Vector field ``px d/dx + py d/dy`` with rational coefficients."""

    __slots__ = ("px", "py", "__dict__")

    def __init__(self, px, py):
        self.px = RationalFn2.coerce(px)
        self.py = RationalFn2.coerce(py)
        if self.px.is_zero() and self.py.is_zero():
            raise ValueError("vector field is identically zero")

    @classmethod
    def parse(cls, text: str, variables=None) -> "RationalVF2":
        from .parsing import parse_pair
        return cls(*parse_pair(text, variables))

    # arithmetic -------------------------------------------------------
    def scale(self, f) -> "RationalVF2":
        f = RationalFn2.coerce(f)
        return RationalVF2(self.px * f, self.py * f)

    def __mul__(self, f):
        return self.scale(f)

    __rmul__ = __mul__

    def __add__(self, other: "RationalVF2") -> "RationalVF2":
        return RationalVF2(self.px + other.px, self.py + other.py)

    def __eq__(self, other):
        if not isinstance(other, RationalVF2):
            return NotImplemented
        return self.px == other.px and self.py == other.py

    def __hash__(self):
        return hash((self.px, self.py))

    def apply(self, f) -> RationalFn2:
        """Lie derivative ``X(f)``."""
        f = RationalFn2.coerce(f)
        return self.px * f.diff_x() + self.py * f.diff_y()

    # coordinates ------------------------------------------------------
    def translate(self, a, b) -> "RationalVF2":
        """The field in coordinates centered at ``(a, b)``."""
        return RationalVF2(self.px.translate(a, b), self.py.translate(a, b))

    def swap(self) -> "RationalVF2":
        """The field after exchanging the roles of ``x`` and ``y``."""
        return RationalVF2(self.py.swap(), self.px.swap())

    def linear_change(self, g: Sequence[Sequence]) -> "RationalVF2":
        """Push forward by the linear map ``(x, y) -> g (x, y)``."""
        g = [[GaussRat.coerce(v) for v in row] for row in g]
        det = g[0][0] * g[1][1] - g[0][1] * g[1][0]
        if det.is_zero():
            raise ValueError("singular linear change")
        gi = [[g[1][1] / det, -g[0][1] / det], [-g[1][0] / det, g[0][0] / det]]
        x, y = BiPoly.x(), BiPoly.y()
        ox = RationalFn2(x.scale(gi[0][0]) + y.scale(gi[0][1]))
        oy = RationalFn2(x.scale(gi[1][0]) + y.scale(gi[1][1]))
        px = self.px.substitute(ox, oy)
        py = self.py.substitute(ox, oy)
        return RationalVF2(px * g[0][0] + py * g[0][1], px * g[1][0] + py * g[1][1])

    # evaluation -------------------------------------------------------
    def evaluate(self, point) -> Tuple[GaussRat, GaussRat]:
        x0, y0 = as_point(point)
        return self.px.evaluate(x0, y0), self.py.evaluate(x0, y0)

    def evaluate_complex(self, x0: complex, y0: complex) -> Tuple[complex, complex]:
        return self.px.evaluate_complex(x0, y0), self.py.evaluate_complex(x0, y0)

    def is_holomorphic_at(self, point) -> bool:
        x0, y0 = as_point(point)
        return not (self.px.has_pole_at(x0, y0) or self.py.has_pole_at(x0, y0))

    # saturation and divisor -------------------------------------------
    @cached_property
    def saturation(self) -> Saturation:
        px, py = self.px, self.py
        if px.den == py.den:
            lcm = px.den
        else:
            g = cas.gcd(px.den, py.den)
            lcm = px.den * py.den.exact_div(g)
        p = px.num * lcm.exact_div(px.den) if not px.is_zero() else BiPoly()
        q = py.num * lcm.exact_div(py.den) if not py.is_zero() else BiPoly()
        g = cas.gcd(p, q)
        a = p.exact_div(g) if not p.is_zero() else BiPoly()
        b = q.exact_div(g) if not q.is_zero() else BiPoly()
        lead_src = a if not a.is_zero() else b
        c, _ = lead_src.monic()
        a, b = a.scale(c.inverse()), b.scale(c.inverse())
        return Saturation(a, b, RationalFn2(g.scale(c), lcm))

    def saturated(self) -> Saturation:
        return self.saturation

    @cached_property
    def divisor(self) -> Tuple[DivisorComponent, ...]:
        h = self.saturation.factor
        comps = []
        if not h.num.is_constant():
            for f, k in cas.factor(h.num)[1]:
                comps.append(DivisorComponent(f, k))
        if not h.den.is_constant():
            for f, k in cas.factor(h.den)[1]:
                comps.append(DivisorComponent(f, -k))
        comps.sort(key=lambda d: (d.curve.degree, d.curve.to_string()))
        return tuple(comps)

    def divisor_through(self, point) -> List[DivisorComponent]:
        x0, y0 = as_point(point)
        return [d for d in self.divisor if d.curve.evaluate(x0, y0).is_zero()]

    # display and serialization ----------------------------------------
    def to_string(self, var_x: str = "x", var_y: str = "y") -> str:
        return f"({self.px.to_string(var_x, var_y)}, {self.py.to_string(var_x, var_y)})"

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"RationalVF2{self.to_string()}"

    def to_json(self) -> dict:
        return {"px": self.px.to_json(), "py": self.py.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "RationalVF2":
        return cls(RationalFn2.from_json(data["px"]), RationalFn2.from_json(data["py"]))


# ---------------------------------------------------------------------------
# order along a curve


def order_along(vf: RationalVF2, curve: BiPoly) -> int:
    """Common vanishing order of the coefficients of ``vf`` along ``curve``.

    The curve must be irreducible over Q(i).  Poles give negative orders.
    """
    if curve.is_zero() or curve.is_constant():
        raise ValueError("curve must be a non-constant polynomial")
    if not cas.is_irreducible(curve):
        raise ValueError("curve not irreducible")
    vals = [c.valuation(curve) for c in (vf.px, vf.py) if not c.is_zero()]
    return int(min(vals))


# ---------------------------------------------------------------------------
# linear part and eigenvalue ratio


def linear_part(vf: RationalVF2, point) -> Matrix:
    """Exact Jacobian matrix of ``(px, py)`` at ``point``."""
    x0, y0 = as_point(point)
    if not vf.is_holomorphic_at((x0, y0)):
        raise NotHolomorphicError("vector field not holomorphic here")
    return ((vf.px.diff_x().evaluate(x0, y0), vf.px.diff_y().evaluate(x0, y0)),
            (vf.py.diff_x().evaluate(x0, y0), vf.py.diff_y().evaluate(x0, y0)))


class EigenKind(str, enum.Enum):
    BOTH_ZERO = "BothZero"
    ONE_ZERO_NON_NILPOTENT = "OneZeroNonNilpotent"
    NILPOTENT = "Nilpotent"
    RATIO_POSITIVE_RATIONAL = "RatioPositiveRational"
    RATIO_NEGATIVE_RATIONAL = "RatioNegativeRational"
    RATIO_IRRATIONAL_OR_COMPLEX = "RatioIrrationalOrComplex"


@dataclass(frozen=True, eq=False)
class EigenClass:
    """Classification of the eigenvalue ratio of a 2x2 matrix.

    ``ratio`` is a representative of ``lambda2/lambda1`` when it is rational;
    the class itself only depends on the unordered pair ``{r, 1/r}``.
    """

    kind: EigenKind
    ratio: Optional[Fraction] = None
    trace: GaussRat = ZERO
    det: GaussRat = ZERO

    def key(self):
        if self.ratio is None:
            return (self.kind,)
        return (self.kind, frozenset({self.ratio, 1 / self.ratio}))

    def __eq__(self, other):
        return isinstance(other, EigenClass) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    @property
    def seidenberg_reduced(self) -> bool:
        """Nondegenerate with ratio outside Q+, or a saddle-node."""
        return self.kind in (EigenKind.RATIO_NEGATIVE_RATIONAL,
                             EigenKind.RATIO_IRRATIONAL_OR_COMPLEX,
                             EigenKind.ONE_ZERO_NON_NILPOTENT)

    def __str__(self):
        return self.kind.value if self.ratio is None else f"{self.kind.value}({self.ratio})"


def rational_sqrt(q: Fraction) -> Optional[Fraction]:
    """Exact square root of a nonnegative rational, or ``None``."""
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def eigen_ratio_class(m: Matrix) -> EigenClass:
    """Exact class of the eigenvalue ratio, without numerical eigenvalues."""
    (a, b), (c, d) = [[GaussRat.coerce(v) for v in row] for row in m]
    t = a + d
    det = a * d - b * c
    if det.is_zero():
        if not t.is_zero():
            return EigenClass(EigenKind.ONE_ZERO_NON_NILPOTENT, None, t, det)
        if all(v.is_zero() for v in (a, b, c, d)):
            return EigenClass(EigenKind.BOTH_ZERO, None, t, det)
        return EigenClass(EigenKind.NILPOTENT, None, t, det)
    s = t * t / det
    if s.im:
        return EigenClass(EigenKind.RATIO_IRRATIONAL_OR_COMPLEX, None, t, det)
    s = s.re
    root = rational_sqrt(s * (s - 4))
    if root is None:
        return EigenClass(EigenKind.RATIO_IRRATIONAL_OR_COMPLEX, None, t, det)
    r1 = (s - 2 + root) / 2
    ratio = r1
    if b.is_zero() or c.is_zero():
        lam1, lam2 = a, d
        if not lam1.is_zero():
            q = lam2 / lam1
            if q.is_real() and q.re in (r1, 1 / r1):
                ratio = q.re
    kind = EigenKind.RATIO_POSITIVE_RATIONAL if ratio > 0 else EigenKind.RATIO_NEGATIVE_RATIONAL
    return EigenClass(kind, ratio, t, det)


def eigenvalues_exact(m: Matrix) -> Optional[Tuple[GaussRat, GaussRat]]:
    """Both eigenvalues when they lie in Q(i), else ``None``."""
    (a, b), (c, d) = m
    t = a + d
    det = a * d - b * c
    disc = t * t - det * 4
    r = gauss_sqrt(disc)
    if r is None:
        return None
    return ((t + r) / 2, (t - r) / 2)


def gauss_sqrt(z: GaussRat) -> Optional[GaussRat]:
    """Exact square root in Q(i), or ``None``."""
    if z.is_zero():
        return ZERO
    n = rational_sqrt(z.norm())
    if n is None:
        return None
    u = rational_sqrt((z.re + n) / 2)
    v = rational_sqrt((n - z.re) / 2)
    if u is None or v is None:
        return None
    if z.im < 0:
        v = -v
    cand = GaussRat(u, v)
    return cand if cand * cand == z else None


def eigenvector(m: Matrix, lam: GaussRat) -> Tuple[GaussRat, GaussRat]:
    """A nonzero vector in the kernel of ``m - lam`` (``lam`` an eigenvalue)."""
    (a, b), (c, d) = m
    a, d = a - lam, d - lam
    if not (a.is_zero() and b.is_zero()):
        return (-b, a)
    if not (c.is_zero() and d.is_zero()):
        return (-d, c)
    return (ONE, ZERO)
