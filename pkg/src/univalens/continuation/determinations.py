"""Counting determinations of a solution by continuation along loops.

Points are continued along each generator loop of the time plane; endpoints
are compared on the quotient surface where the leaf lives.  The orbit of the
start point under the generators is explored breadth first, and its size is a
lower bound for the number of determinations of the solution over a time.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from ..algebra import RationalFn2
from ..algebra.fields import RationalVF2
from ..algebra.parsing import parse_rational
from ..common import parallel_map
from .engine import ContinuationResult, continue_solution
from .field import CompiledRational, NumericField
from .integrator import Outcome
from .paths import PathSpec

CLUSTER_FACTOR = 1e3
ERROR_FLOOR = 1e-13
MAX_ORBIT = 64

Point = Tuple[complex, complex]


@dataclass(frozen=True)
class LeafSpec:
    """A leaf given by a first integral ``H = value`` on a quotient surface.

    ``distance`` measures points on the quotient; the default is the ambient
    Euclidean distance.
    """

    first_integral: RationalFn2
    value: complex
    distance: Callable[[Point, Point], float] = None
    label: str = ""

    def residual(self, p: Point) -> float:
        h = CompiledRational(self.first_integral)(complex(p[0]), complex(p[1]))
        return abs(h - self.value)

    def dist(self, p: Point, q: Point) -> float:
        if self.distance is not None:
            return self.distance(p, q)
        return max(abs(p[0] - q[0]), abs(p[1] - q[1]))


@dataclass
class DeterminationCount:
    count: int
    certified_lower_bound: int
    loops_tested: int
    infinite_flag: bool = False
    ambiguous: List[Tuple[int, float]] = field(default_factory=list)
    points: List[Point] = field(default_factory=list)
    max_error: float = 0.0
    notes: List[str] = field(default_factory=list)

    def __post_init__(self):
        if self.count < self.certified_lower_bound:
            raise ValueError("count below the certified lower bound")

    def to_json(self) -> dict:
        return {"count": self.count, "certified_lower_bound": self.certified_lower_bound,
                "loops_tested": self.loops_tested, "infinite_flag": self.infinite_flag,
                "ambiguous": [list(a) for a in self.ambiguous], "points": [list(p) for p in self.points],
                "max_error": self.max_error, "notes": list(self.notes)}


def count_determinations(leaf: Optional[LeafSpec], vf: RationalVF2, start: Point,
                         generators: Sequence[PathSpec], tol: float = 1e-10,
                         max_orbit: int = MAX_ORBIT) -> DeterminationCount:
    """Lower bound for the number of determinations of the solution through ``start``."""
    start = (complex(start[0]), complex(start[1]))
    if leaf is not None:
        if not vf.apply(leaf.first_integral).is_zero():
            raise ValueError("leaf spec inconsistent with the field: first integral not preserved")
        if leaf.residual(start) > max(tol, 1e-9) * (1 + abs(leaf.value)):
            raise ValueError("start point is not on the declared leaf (tangency residual above tol)")
    for g in generators:
        if not g.is_closed():
            raise ValueError("generators must be closed loops")
    if not generators:
        return DeterminationCount(1, 1, 0, points=[start], notes=["no loops: trivial subgroup"])

    nf = NumericField(vf)
    dist = leaf.dist if leaf is not None else (lambda p, q: max(abs(p[0] - q[0]), abs(p[1] - q[1])))
    orbit: List[Point] = [start]
    errors: List[float] = [0.0]
    frontier = [0]
    ambiguous: List[Tuple[int, float]] = []
    notes: List[str] = []
    loops = 0
    max_err = 0.0
    while frontier and len(orbit) <= max_orbit:
        jobs = [(i, g) for i in frontier for g in generators]
        results: List[ContinuationResult] = parallel_map(
            lambda job: continue_solution(nf, orbit[job[0]], job[1], tol), jobs)
        loops += len(jobs)
        frontier = []
        for (i, _), res in zip(jobs, results):
            if res.outcome is not Outcome.COMPLETED:
                raise ArithmeticError(f"continuation failed along a generator: {res.outcome.value} ({res.reason})")
            p = res.endpoint
            err = errors[i] + res.error_estimate
            max_err = max(max_err, err)
            thresh = CLUSTER_FACTOR * max(err, ERROR_FLOOR)
            found = None
            for j, q in enumerate(orbit):
                d = dist(p, q)
                if d <= thresh + CLUSTER_FACTOR * errors[j]:
                    found = j
                    break
                if d <= 10 * (thresh + CLUSTER_FACTOR * errors[j]):
                    ambiguous.append((j, d))
            if found is None:
                orbit.append(p)
                errors.append(err)
                frontier.append(len(orbit) - 1)
    infinite = bool(frontier)
    if infinite:
        notes.append(f"orbit did not close within {max_orbit} points")
    if ambiguous:
        notes.append("some endpoints fall between the clustering threshold and ten times it")
    n = len(orbit)
    return DeterminationCount(n, n, loops, infinite, ambiguous, orbit, max_err, notes)


# ---------------------------------------------------------------------------
# Example: the field 1/(2x) d/dx - 1/x^3 d/dy on C x (C / Lambda), modulo (x, y) -> (-x, -y)

EXAMPLE4_FIELD = "(1/(2*x), -1/x^3)"
EXAMPLE4_INTEGRAL = "y - 2/x"


def example4_field() -> RationalVF2:
    return RationalVF2.parse(EXAMPLE4_FIELD)


def _lattice_distance(d: complex, lattice: Tuple[complex, complex]) -> float:
    """Distance from ``d`` to the lattice spanned by a basis."""
    w1, w2 = lattice
    m = np.linalg.solve(np.array([[w1.real, w2.real], [w1.imag, w2.imag]]), np.array([d.real, d.imag]))
    best = float("inf")
    for a in (np.floor(m[0]), np.ceil(m[0])):
        for b in (np.floor(m[1]), np.ceil(m[1])):
            best = min(best, abs(d - a * w1 - b * w2))
    return best


def quotient_distance(lattice: Tuple[complex, complex] = (1, 1j)) -> Callable[[Point, Point], float]:
    """Distance on ``(C x C/Lambda) / sigma`` with ``sigma(x, y) = (-x, -y)``."""
    lat = (complex(lattice[0]), complex(lattice[1]))

    def dist(p: Point, q: Point) -> float:
        direct = max(abs(p[0] - q[0]), _lattice_distance(p[1] - q[1], lat))
        flipped = max(abs(p[0] + q[0]), _lattice_distance(p[1] + q[1], lat))
        return min(direct, flipped)

    return dist


def example4_leaf(c: complex, lattice: Tuple[complex, complex] = (1, 1j)) -> LeafSpec:
    return LeafSpec(parse_rational(EXAMPLE4_INTEGRAL), complex(c), quotient_distance(lattice), f"y = {c} + 2/x")


def example4_generator(x0: complex = 1.0, radius: float = 0.5) -> PathSpec:
    """Loop in time around the branch point ``t = -x0^2`` where the leaf meets ``x = 0``."""
    x0 = complex(x0)
    return PathSpec.lasso(0j, -x0 * x0, radius)


def example4_count(c: complex, lattice: Tuple[complex, complex] = (1, 1j), x0: complex = 1.0,
                   tol: float = 1e-10) -> DeterminationCount:
    leaf = example4_leaf(c, lattice)
    start = (complex(x0), complex(c) + 2 / complex(x0))
    return count_determinations(leaf, example4_field(), start, [example4_generator(x0)], tol)


def half_lattice_points(lattice: Tuple[complex, complex] = (1, 1j)) -> List[complex]:
    """The four classes of ``(1/2) Lambda`` modulo ``Lambda``."""
    w1, w2 = complex(lattice[0]), complex(lattice[1])
    return [0j, w1 / 2, w2 / 2, (w1 + w2) / 2]
