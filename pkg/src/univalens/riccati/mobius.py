"""Möbius transformations, numeric and exact, and their fixed points."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from ..algebra import GaussRat, ZERO, ONE
from ..algebra import cas
from ..algebra import univariate as uni
from ..common import INF, Infinity, is_inf

PointP1 = Union[complex, Infinity]


def chordal_distance(p: PointP1, q: PointP1) -> float:
    """Chordal distance on the Riemann sphere (diameter 2)."""
    if is_inf(p) and is_inf(q):
        return 0.0
    if is_inf(p):
        p, q = q, p
    if is_inf(q):
        return 2.0 / math.hypot(1.0, abs(p))
    return 2.0 * (abs(p - q) / math.hypot(1.0, abs(p))) / math.hypot(1.0, abs(q))


@dataclass(frozen=True)
class Mobius:
    """``w -> (a w + b)/(c w + d)`` stored as a determinant-one matrix."""

    matrix: Tuple[Tuple[complex, complex], Tuple[complex, complex]]

    @classmethod
    def from_matrix(cls, m) -> "Mobius":
        m = np.asarray(m, dtype=complex)
        det = complex(np.linalg.det(m))
        if abs(det) < 1e-300:
            raise ValueError("singular matrix")
        m = m / cmath.sqrt(det)
        return cls(((complex(m[0, 0]), complex(m[0, 1])), (complex(m[1, 0]), complex(m[1, 1]))))

    @classmethod
    def identity(cls) -> "Mobius":
        return cls(((1 + 0j, 0j), (0j, 1 + 0j)))

    @classmethod
    def translation(cls, b: complex) -> "Mobius":
        return cls.from_matrix([[1, b], [0, 1]])

    @classmethod
    def scaling(cls, k: complex) -> "Mobius":
        return cls.from_matrix([[k, 0], [0, 1]])

    def array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=complex)

    def lifts(self) -> Tuple[np.ndarray, np.ndarray]:
        """The two determinant-one matrices representing the map."""
        m = self.array()
        return m, -m

    def __matmul__(self, other: "Mobius") -> "Mobius":
        return Mobius.from_matrix(self.array() @ other.array())

    def inverse(self) -> "Mobius":
        (a, b), (c, d) = self.matrix
        return Mobius(((d, -b), (-c, a)))

    @property
    def trace(self) -> complex:
        return self.matrix[0][0] + self.matrix[1][1]

    def apply(self, w: PointP1) -> PointP1:
        (a, b), (c, d) = self.matrix
        if is_inf(w):
            return INF if c == 0 else a / c
        den = c * w + d
        if den == 0:
            return INF
        return (a * w + b) / den

    def distance_to_identity(self) -> float:
        m = self.array()
        eye = np.eye(2)
        return float(min(np.max(np.abs(m - eye)), np.max(np.abs(m + eye))))

    def is_identity(self, tol: float = 1e-9) -> bool:
        return self.distance_to_identity() <= tol

    def close_to(self, other: "Mobius", tol: float) -> bool:
        a, b = self.array(), other.array()
        return float(min(np.max(np.abs(a - b)), np.max(np.abs(a + b)))) <= tol

    def kind(self, tol: float = 1e-9) -> str:
        if self.is_identity(tol):
            return "identity"
        tr2 = self.trace ** 2
        if abs(tr2 - 4) <= tol * 10:
            return "parabolic"
        if abs(tr2.imag) <= tol and 0 <= tr2.real < 4:
            return "elliptic"
        return "loxodromic"

    def multiplier(self) -> complex:
        """Derivative at the attracting-or-first fixed point (``k`` for ``w -> k w``)."""
        ev = np.linalg.eigvals(self.array())
        return complex(ev[0] / ev[1])

    def fixed_points(self, tol: float = 1e-9) -> Optional[List[PointP1]]:
        """Fixed points on the sphere, or ``None`` if the map is the identity within ``tol``."""
        if self.is_identity(tol):
            return None
        (a, b), (c, d) = self.matrix
        scale = max(abs(a), abs(b), abs(c), abs(d))
        if abs(c) <= tol * scale:
            pts: List[PointP1] = [INF]
            if abs(d - a) > tol * scale:
                pts.append(b / (d - a) + 0j)
            return pts
        disc = cmath.sqrt((a - d) ** 2 + 4 * b * c)
        r1 = ((a - d) + disc) / (2 * c)
        r2 = ((a - d) - disc) / (2 * c)
        if chordal_distance(r1, r2) <= tol ** 0.5:
            return [(r1 + r2) / 2]
        return [r1, r2]

    def to_json(self) -> dict:
        return {"matrix": [[[z.real, z.imag] for z in row] for row in self.matrix]}


# ---------------------------------------------------------------------------
# exact maps over Q(i)


@dataclass(frozen=True)
class ExactMobius:
    a: GaussRat
    b: GaussRat
    c: GaussRat
    d: GaussRat

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, GaussRat.coerce(getattr(self, name)))
        if (self.a * self.d - self.b * self.c).is_zero():
            raise ValueError("singular matrix")

    def __matmul__(self, o: "ExactMobius") -> "ExactMobius":
        return ExactMobius(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                           self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def is_identity(self) -> bool:
        return self.b.is_zero() and self.c.is_zero() and self.a == self.d

    def apply(self, w):
        if is_inf(w):
            return INF if self.c.is_zero() else self.a / self.c
        w = GaussRat.coerce(w)
        den = self.c * w + self.d
        if den.is_zero():
            return INF
        return (self.a * w + self.b) / den

    def fixes(self, w) -> bool:
        return self.apply(w) == (w if is_inf(w) else GaussRat.coerce(w))

    def fixed_form(self) -> List[GaussRat]:
        """Coefficients of ``c w^2 + (d - a) w - b`` (ascending)."""
        return [-self.b, self.d - self.a, self.c]

    def to_numeric(self) -> Mobius:
        return Mobius.from_matrix([[complex(self.a), complex(self.b)], [complex(self.c), complex(self.d)]])


@dataclass(frozen=True)
class ExactFixedSet:
    """Common fixed points of a family of exact maps."""

    everything: bool
    points: Tuple[object, ...]
    algebraic: int = 0

    @property
    def count(self) -> Union[int, Infinity]:
        return INF if self.everything else len(self.points) + self.algebraic


def common_fixed_points_exact(maps: Sequence[ExactMobius]) -> ExactFixedSet:
    """Exact common fixed points via the gcd of the fixed-point quadratic forms."""
    forms = [m.fixed_form() for m in maps]
    nonzero = [uni.trim(f) for f in forms if any(not v.is_zero() for v in f)]
    if not nonzero:
        return ExactFixedSet(True, ())
    at_inf = all(f[2].is_zero() for f in forms)
    g: List[GaussRat] = []
    for f in nonzero:
        g = cas.univariate_gcd(g, f) if g else cas.univariate_gcd(f, [])
    points: List[object] = []
    extra = 0
    if len(g) > 1:
        roots, left = cas.univariate_roots(g)
        points += [r for r, _ in roots]
        extra = sum(d for d, _ in left)
    if at_inf:
        points.append(INF)
    return ExactFixedSet(False, tuple(points), extra)
