"""Special fibers of Riccati foliations and flips.

Fields are given in fiber-adapted coordinates ``(z, w)`` with the fiber
``{z = 0}``: after saturation the ``d/dz`` coefficient depends on ``z`` only and
the ``d/dw`` coefficient has degree at most two in ``w``.  The standard models:

    Transverse                    d/dz
    NonDegenerateNonParabolic     z d/dz + lam w d/dw,  lam not rational
    NonDegenerateParabolic        z d/dz + d/dw
    Dicritical(p/q)               z d/dz + (p/q) w d/dw, 0 < p < q
    Semidegenerate                two saddle-nodes on the fiber
    Nilpotent                     one singular point with nilpotent linear part
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple, Union

import numpy as np

from ..algebra import BiPoly, GaussRat, RationalFn2, ZERO, ONE
from ..algebra import cas
from ..algebra.fields import RationalVF2
from ..algebra.parsing import parse_number, parse_rational
from ..common import INF, Infinity, is_inf
from ..continuation.paths import PathSpec
from .equation import RiccatiEq, loop_monodromy
from .mobius import Mobius

VARS = ("z", "w")


class FiberKind(str, enum.Enum):
    TRANSVERSE = "Transverse"
    NON_DEGENERATE_NON_PARABOLIC = "NonDegenerateNonParabolic"
    NON_DEGENERATE_PARABOLIC = "NonDegenerateParabolic"
    DICRITICAL = "Dicritical"
    SEMIDEGENERATE = "Semidegenerate"
    NILPOTENT = "Nilpotent"


class FiberFormError(ValueError):
    """The fiber is not of a recognized standard form."""


@dataclass
class FiberClass:
    kind: FiberKind
    local_monodromy: Mobius
    lam: Optional[Union[GaussRat, complex]] = None
    exact: bool = True
    singular_points: Tuple[object, ...] = ()
    flips_to_model: int = 0
    notes: List[str] = field(default_factory=list)

    def __post_init__(self):
        if self.kind is FiberKind.DICRITICAL:
            r = self.ratio
            if not (0 < r.numerator < r.denominator):
                raise ValueError("dicritical parameter must be p/q with 0 < p < q")
        if self.kind is FiberKind.NON_DEGENERATE_NON_PARABOLIC and isinstance(self.lam, GaussRat):
            if self.lam.is_real():
                raise ValueError("non-parabolic parameter must be irrational")

    @property
    def ratio(self) -> Fraction:
        return self.lam.re if isinstance(self.lam, GaussRat) else Fraction(self.lam).limit_denominator(10 ** 6)

    @property
    def multiplicity(self) -> Optional[int]:
        return self.ratio.denominator if self.kind is FiberKind.DICRITICAL else None

    @property
    def first_integral(self) -> Optional[str]:
        if self.kind is not FiberKind.DICRITICAL:
            return None
        r = self.ratio
        return f"w^{r.denominator}/z^{r.numerator}"

    def label(self) -> str:
        if self.kind is FiberKind.DICRITICAL:
            return f"Dicritical({self.ratio})"
        if self.kind is FiberKind.NON_DEGENERATE_NON_PARABOLIC:
            text = str(self.lam)
            if text.startswith("(") and text.endswith(")"):
                text = text[1:-1]
            return f"NonDegenerateNonParabolic({text})"
        return self.kind.value

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "label": self.label(), "lambda": None if self.lam is None else str(self.lam),
                "exact": self.exact, "flips_to_model": self.flips_to_model,
                "singular_points": [str(p) for p in self.singular_points],
                "first_integral": self.first_integral, **self.local_monodromy.to_json(), "notes": list(self.notes)}


def _vf(v) -> RationalVF2:
    if isinstance(v, str):
        return RationalVF2.parse(v, VARS)
    return v


def _coeffs_in_w(p: BiPoly, z0=0) -> List[GaussRat]:
    """Dense coefficients in ``w`` of ``p(z0, w)``."""
    return p.restrict_x(z0)


def model_field(kind: Union[FiberKind, str], lam=None) -> RationalVF2:
    kind = FiberKind(kind)
    if kind is FiberKind.TRANSVERSE:
        return RationalVF2.parse("(1, 0)", VARS)
    if kind is FiberKind.NON_DEGENERATE_PARABOLIC:
        return RationalVF2.parse("(z, 1)", VARS)
    if kind is FiberKind.SEMIDEGENERATE:
        return RationalVF2.parse("(z^2, w*(w-1))", VARS)
    if kind is FiberKind.NILPOTENT:
        return RationalVF2.parse("(z^2, w^2+z)", VARS)
    lam = parse_number(lam) if isinstance(lam, str) else GaussRat.coerce(lam)
    return RationalVF2.parse(f"(z, ({lam})*w)", VARS)


# ---------------------------------------------------------------------------
# flips


def _rf(text: str) -> RationalFn2:
    return parse_rational(text, VARS)


def flip(vf, point=0, saturate: bool = True) -> RationalVF2:
    """Push the field forward by ``(z, w) -> (z, z (w - w0))``; at ``w0 = inf`` by ``(z, w) -> (z, w/z)``.

    The flip at ``w0`` replaces the parameter of the model at ``w0`` by ``lam + 1``.
    """
    vf = _vf(vf)
    a, b = vf.px, vf.py
    z = _rf("z")
    if is_inf(point):
        # chart W = 1/w, flip at W = 0 (U = z W), back to u = 1/U = w/z
        w_of = _rf("w") * z  # w = u z
        a_new = a.substitute(z, w_of)
        b_new = b.substitute(z, w_of)
        u = _rf("w")
        out = RationalVF2(a_new, (b_new - u * a_new) / z)
    else:
        w0 = GaussRat.coerce(point)
        w_of = RationalFn2.coerce(w0) + _rf("w") / z  # w = w0 + W/z
        a_new = a.substitute(z, w_of)
        b_new = b.substitute(z, w_of)
        wn = _rf("w")
        out = RationalVF2(a_new, (wn / z) * a_new + z * b_new)
    return _saturated(out) if saturate else out


def flip_inverse(vf, point=0, saturate: bool = True) -> RationalVF2:
    """Pull back by the flip at ``w0``: substitute ``W = z (w - w0)``."""
    vf = _vf(vf)
    if is_inf(point):
        vf = _swap_chart(vf)
        out = flip_inverse(vf, 0, saturate=False)
        out = _swap_chart(out)
        return _saturated(out) if saturate else out
    w0 = GaussRat.coerce(point)
    z = _rf("z")
    shifted = _rf("w") - RationalFn2.coerce(w0)
    W_of = z * shifted
    a_new = vf.px.substitute(z, W_of)
    b_new = vf.py.substitute(z, W_of)
    out = RationalVF2(a_new, (b_new - shifted * a_new) / z)
    return _saturated(out) if saturate else out


def _swap_chart(vf: RationalVF2) -> RationalVF2:
    """Express the field in the chart ``W = 1/w``."""
    z, W = _rf("z"), _rf("w")
    inv = ONE_R / W
    a = vf.px.substitute(z, inv)
    b = vf.py.substitute(z, inv)
    return RationalVF2(a, -(W * W) * b)


ONE_R = RationalFn2.coerce(1)


def _saturated(vf: RationalVF2) -> RationalVF2:
    s = vf.saturation
    return RationalVF2(RationalFn2(s.a), RationalFn2(s.b))


# ---------------------------------------------------------------------------
# classification


def _fiber_equation(a_z: List[GaussRat], b: BiPoly) -> RiccatiEq:
    """The Riccati equation ``dw/dz = b(z, w) / a(z)`` with ``z`` as time."""
    coeffs = [RationalFn2(BiPoly()) for _ in range(3)]
    for (i, j), c in b.items():
        coeffs[j] = coeffs[j] + RationalFn2(BiPoly({(i, 0): c}))
    den = RationalFn2(BiPoly({(i, 0): c for i, c in enumerate(a_z) if not c.is_zero()}))
    return RiccatiEq(coeffs[0] / den, coeffs[1] / den, coeffs[2] / den)


def numeric_local_monodromy(a_z, b: BiPoly, tol: float = 1e-12) -> Mobius:
    eq = _fiber_equation(a_z, b)
    others = [abs(p) for p in eq.singular_times if abs(p) > 1e-12]
    r = min([0.25] + [0.5 * d for d in others])
    return loop_monodromy(eq, PathSpec.circle(0, r, n=64), tol).map


def _rotation(lam: complex) -> Mobius:
    return Mobius.from_matrix([[cmath.exp(2j * cmath.pi * complex(lam)), 0], [0, 1]])


PARABOLIC_MODEL = Mobius.from_matrix([[1, 2j * cmath.pi], [0, 1]])


def classify_fiber(vf_local, fiber: str = "z=0", tol: float = 1e-9) -> FiberClass:
    """Classify the fiber ``{z = 0}`` of a field in fiber-adapted coordinates."""
    if fiber.replace(" ", "") not in ("z=0", "x=0"):
        raise ValueError("the fiber must be {z = 0}; translate the field first")
    vf = _vf(vf_local)
    sat = vf.saturation
    a, b = sat.a, sat.b
    if a.uses_y():
        raise FiberFormError("d/dz coefficient depends on w: not a fiber-adapted Riccati form; try a flip or reduction")
    if b.degree_y() > 2:
        raise FiberFormError("d/dw coefficient has degree above two in w: not a Riccati form")
    a_z = a.restrict_y(0)  # dense list in z
    while a_z and a_z[-1].is_zero():
        a_z.pop()
    if not a_z[0].is_zero():
        return FiberClass(FiberKind.TRANSVERSE, Mobius.identity(), notes=["fiber not invariant, foliation transverse"])
    k = next(i for i, c in enumerate(a_z) if not c.is_zero())
    q = _coeffs_in_w(b, 0)
    q = q + [ZERO] * (3 - len(q))
    if all(c.is_zero() for c in q):  # pragma: no cover - excluded by saturation
        raise FiberFormError("fiber consists of singular points")
    deg_q = max(i for i, c in enumerate(q) if not c.is_zero())
    points: List[object] = []
    finite = [c for c in q[: deg_q + 1]]
    if deg_q >= 1:
        roots, left = cas.univariate_roots(finite)
        if left:
            raise FiberFormError("singular points on the fiber are not Gaussian-rational")
        points = [(r, m) for r, m in roots]
    if deg_q < 2:
        points.append((INF, 2 - deg_q))
    distinct = len(points)

    def w_eigen(pt) -> GaussRat:
        """Eigenvalue along the fiber at a singular point."""
        if is_inf(pt):
            return -q[1]
        return q[1] + 2 * q[2] * pt

    alpha = a_z[1] if k == 1 else ZERO
    labels = tuple(p for p, _ in points)
    if k == 1 and distinct == 2:
        w0 = next((p for p, _ in points if not is_inf(p)), points[0][0])
        lam = w_eigen(w0) / alpha
        if not lam.is_real():
            return FiberClass(FiberKind.NON_DEGENERATE_NON_PARABOLIC, _rotation(complex(lam)), lam, True, labels,
                              notes=[f"parameter read at w = {w0}"])
        frac = lam.re - math.floor(lam.re)
        if frac != 0:
            return FiberClass(FiberKind.DICRITICAL, _rotation(complex(lam)), GaussRat(frac), True, labels,
                              flips_to_model=-math.floor(lam.re),
                              notes=[f"parameter {lam} at w = {w0}; flips shift it by integers"])
        mono = numeric_local_monodromy(a_z, b)
        if mono.is_identity(tol):
            return FiberClass(FiberKind.TRANSVERSE, mono, lam, False, labels, flips_to_model=-int(lam.re),
                              notes=[f"integral parameter {lam} with trivial monodromy: flips give a transverse fiber"])
        return FiberClass(FiberKind.NON_DEGENERATE_PARABOLIC, mono, lam, False, labels,
                          notes=[f"resonant integral parameter {lam}; monodromy computed numerically"])
    if k == 1 and distinct == 1:
        mono = numeric_local_monodromy(a_z, b)
        if mono.is_identity(tol) or mono.kind(tol) != "parabolic":
            raise FiberFormError("one saddle-node on a non-degenerate fiber without parabolic monodromy; try a flip")
        return FiberClass(FiberKind.NON_DEGENERATE_PARABOLIC, mono, None, False, labels,
                          notes=["one saddle-node on the fiber; monodromy computed numerically"])
    if k >= 2 and distinct == 2:
        if any(w_eigen(p).is_zero() for p in labels):
            raise FiberFormError("degenerate fiber with a nilpotent point; not a standard form")
        mono = numeric_local_monodromy(a_z, b)
        return FiberClass(FiberKind.SEMIDEGENERATE, mono, None, False, labels,
                          notes=["two saddle-nodes with strong separatrices in the fiber",
                                 "resolution data: not recomputed by blow-ups"])
    if k >= 2 and distinct == 1:
        w0 = labels[0]
        bz = _nilpotent_entry(b, w0)
        if bz.is_zero():
            raise FiberFormError("degenerate fiber whose singular point has zero linear part")
        mono = numeric_local_monodromy(a_z, b)
        return FiberClass(FiberKind.NILPOTENT, mono, None, False, labels,
                          notes=["one singular point with nilpotent linear part",
                                 "resolution: central (-1)-curve with a saddle-node and two (-2)-curves"])
    raise FiberFormError("fiber not of a recognized standard form; try a flip or reduction")


def _nilpotent_entry(b: BiPoly, w0) -> GaussRat:
    """``d b / dz`` at the singular point (in the chart ``W = 1/w`` at infinity)."""
    if is_inf(w0):
        # W' = -(b0 W^2 + b1 W + b2), the z-derivative of -b2(z) at z = 0
        return -b.diff_x().restrict_x(0)[2] if b.diff_x().degree_y() >= 2 else ZERO
    return b.diff_x().evaluate(ZERO, GaussRat.coerce(w0))
