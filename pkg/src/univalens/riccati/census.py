"""Common fixed points of the monodromy on the kernel of the time periods.

Maximal solutions of a fibration-preserving field correspond to the points of
the fiber fixed by every loop whose base-time period vanishes.  Kernel
elements are probed up to a bounded word length: generators with zero
period, two-generator words ``g_i^m g_j^n`` with ``m mu_i + n mu_j = 0`` for an
integer relation of height at most 64, and all commutators.  A Möbius
subgroup fixing three points is trivial, which gives the ``AllMaximal`` rule.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..common import INF, is_inf
from .equation import MonodromyRep
from .fibers import FiberClass, FiberKind
from .mobius import ExactMobius, Mobius, PointP1, chordal_distance, common_fixed_points_exact

MAX_RELATION_HEIGHT = 64


class CensusVerdict(str, enum.Enum):
    ALL_MAXIMAL = "AllMaximal"
    EXACTLY_K = "ExactlyK"
    NONE_FOUND = "NoneFound"


@dataclass
class FixedPointCensus:
    common_fixed_points: List[PointP1]
    verdict: CensusVerdict
    kernel_words: List[str] = field(default_factory=list)
    unresolved: List[str] = field(default_factory=list)
    error_bar: float = 0.0
    notes: List[str] = field(default_factory=list)

    def __post_init__(self):
        if len(self.common_fixed_points) >= 3 and self.verdict is not CensusVerdict.ALL_MAXIMAL:
            raise ValueError("three common fixed points force the AllMaximal verdict")

    @property
    def k(self) -> Optional[int]:
        return len(self.common_fixed_points) if self.verdict is CensusVerdict.EXACTLY_K else None

    def label(self) -> str:
        if self.verdict is CensusVerdict.EXACTLY_K:
            return f"ExactlyK({self.k})"
        return self.verdict.value

    def to_json(self) -> dict:
        pts = ["inf" if is_inf(p) else [p.real, p.imag] for p in self.common_fixed_points]
        return {"verdict": self.label(), "common_fixed_points": pts, "error_bar": self.error_bar,
                "kernel_words": list(self.kernel_words), "unresolved": list(self.unresolved),
                "notes": list(self.notes)}


def _power(m: Mobius, n: int) -> Mobius:
    out = Mobius.identity()
    base = m if n >= 0 else m.inverse()
    for _ in range(abs(n)):
        out = base @ out
    return out


def _integer_relation(mu_i: complex, mu_j: complex, tol: float) -> Optional[Tuple[int, int]]:
    """``(m, n)`` with ``m mu_i + n mu_j = 0`` and ``max(|m|, |n|) <= 64``, if one exists."""
    if abs(mu_i) <= tol or abs(mu_j) <= tol:
        return None
    r = -mu_j / mu_i
    if abs(r.imag) > tol * (1 + abs(r)):
        return None
    f = Fraction(r.real).limit_denominator(MAX_RELATION_HEIGHT)
    if abs(f.numerator) > MAX_RELATION_HEIGHT or abs(float(f) - r.real) > tol * (1 + abs(r)) * 10:
        return None
    # m mu_i + n mu_j = 0 with n = denominator, m = -n * mu_j/mu_i = numerator
    return f.numerator, f.denominator


def kernel_elements(rep: MonodromyRep, tol: float) -> Tuple[List[Tuple[str, Mobius]], List[str], List[str]]:
    """Probe elements of the kernel of the time-period homomorphism."""
    maps, mus = rep.maps, rep.time_periods
    scale = max([1.0] + [abs(m) for m in mus])
    ztol = tol * scale
    words: List[Tuple[str, Mobius]] = []
    unresolved: List[str] = []
    notes: List[str] = []
    if all(abs(m) <= ztol for m in mus):
        notes.append("all periods vanish: every loop lies in the kernel")
        return [(f"g{i}", m) for i, m in enumerate(maps)], unresolved, notes
    zero = [i for i, m in enumerate(mus) if abs(m) <= ztol]
    words += [(f"g{i}", maps[i]) for i in zero]
    for i, j in itertools.combinations(range(len(maps)), 2):
        words.append((f"[g{i},g{j}]", maps[i] @ maps[j] @ maps[i].inverse() @ maps[j].inverse()))
        if i in zero or j in zero:
            continue
        rel = _integer_relation(mus[i], mus[j], tol)
        if rel is None:
            unresolved.append(f"g{i}^m g{j}^n: no integer relation of height <= {MAX_RELATION_HEIGHT}")
            continue
        m, n = rel
        words.append((f"g{i}^{m} g{j}^{n}", _power(maps[i], m) @ _power(maps[j], n)))
    return words, unresolved, notes


def _merge(points: List[PointP1], p: PointP1, tol: float) -> None:
    if all(chordal_distance(p, q) > tol for q in points):
        points.append(p)


def fixed_point_census(rep: MonodromyRep, tol: float = 1e-7) -> FixedPointCensus:
    if not rep.generators:
        raise ValueError("empty monodromy representation")
    words, unresolved, notes = kernel_elements(rep, tol)
    nontrivial = [(w, m) for w, m in words if not m.is_identity(tol)]
    names = [w for w, _ in words]
    if not nontrivial:
        return FixedPointCensus([], CensusVerdict.ALL_MAXIMAL, names, unresolved, tol,
                                notes + ["every probed kernel element is the identity"])
    candidates: List[PointP1] = []
    for _, m in nontrivial:
        for p in m.fixed_points(tol) or []:
            _merge(candidates, p, tol ** 0.5)
    common: List[PointP1] = []
    for p in candidates:
        if all(chordal_distance(m.apply(p), p) <= 10 * tol ** 0.5 for _, m in nontrivial):
            _merge(common, p, tol ** 0.5)
    if len(common) >= 3:
        return FixedPointCensus(common, CensusVerdict.ALL_MAXIMAL, names, unresolved, tol,
                                notes + ["three common fixed points: the kernel acts trivially"])
    verdict = CensusVerdict.EXACTLY_K if common else CensusVerdict.NONE_FOUND
    return FixedPointCensus(common, verdict, names, unresolved, tol ** 0.5, notes)


def exact_census(maps: Sequence[ExactMobius]) -> Tuple[CensusVerdict, object]:
    """Census for exact kernel maps; returns the verdict and the exact fixed set."""
    fs = common_fixed_points_exact(maps)
    if fs.everything:
        return CensusVerdict.ALL_MAXIMAL, fs
    n = len(fs.points) + fs.algebraic
    if n >= 3:  # pragma: no cover - impossible for a nonzero quadratic form
        return CensusVerdict.ALL_MAXIMAL, fs
    return (CensusVerdict.EXACTLY_K if n else CensusVerdict.NONE_FOUND), fs


# ---------------------------------------------------------------------------
# special-fiber compatibility with a Zariski-dense maximal solution

ALLOWED_WITH_TRANSVERSE_ZEROS = {FiberKind.TRANSVERSE, FiberKind.NON_DEGENERATE_PARABOLIC, FiberKind.DICRITICAL}


@dataclass
class ForbidReport:
    verdict: str
    offending: List[str]
    reason: str
    notes: List[str] = field(default_factory=list)

    @property
    def compatible(self) -> bool:
        return self.verdict == "consistent"

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "offending": list(self.offending), "reason": self.reason,
                "notes": list(self.notes)}


def _kind(f) -> FiberKind:
    return f.kind if isinstance(f, FiberClass) else FiberKind(f)


def forbid_check(fibers: Sequence, has_transverse_zero_divisor: bool, ell_size: int) -> ForbidReport:
    """Compare the special fibers with a maximal solution meeting a generic fiber in ``ell_size`` points."""
    notes = ["ell_size is taken as asserted; density of a traced leaf is not certified"]
    if not has_transverse_zero_divisor:
        return ForbidReport("consistent", [], "zeros and poles do not cross the fibration: it is preserved", notes)
    if ell_size < 3:
        return ForbidReport("consistent", [], "fewer than three points of the solution on a generic fiber", notes)
    bad = [(f.label() if isinstance(f, FiberClass) else _kind(f).value) for f in fibers
           if _kind(f) not in ALLOWED_WITH_TRANSVERSE_ZEROS]
    if bad:
        return ForbidReport("incompatible with a Zariski-dense maximal solution", bad,
                            f"special fiber of kind {', '.join(bad)} meets a transverse zero divisor",
                            notes)
    return ForbidReport("consistent", [], "all special fibers are parabolic or dicritical", notes)
