"""Riccati equations ``w' = a(t) + b(t) w + c(t) w^2`` and their monodromy.

The equation is lifted to the trace-free linear system

    u' = [[b/2, a], [-c, -b/2]] u,      w = u1/u2,

whose projectivized flow is the Riccati flow.  Continuing a fundamental matrix
around a loop gives a determinant-one matrix, defined up to sign, acting on
``w`` by a Möbius transformation.  For loops ``g`` then ``h`` the monodromy of
the concatenation is ``M(h) M(g)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..algebra import RationalFn2, ZERO
from ..algebra import cas
from ..algebra.parsing import parse_rational
from ..common import parallel_map
from ..continuation.engine import integrate_path
from ..continuation.field import CompiledRational
from ..continuation.integrator import Outcome
from ..continuation.paths import PathSpec
from .mobius import Mobius

DEFAULT_CLEARANCE = 1e-3
DET_TOL = 1e-6


def _parse_t(text) -> RationalFn2:
    if isinstance(text, RationalFn2):
        return text
    r = parse_rational(str(text).replace("t", "x"), ("x", "y"))
    if r.num.uses_y() or r.den.uses_y():
        raise ValueError(f"coefficient {text!r} must depend on t only")
    return r


def _poles(r: RationalFn2) -> List[complex]:
    coeffs = [ZERO] * (r.den.degree_x() + 1)
    for (i, _), c in r.den.items():
        coeffs[i] = c
    if len(coeffs) <= 1:
        return []
    roots, left = cas.univariate_roots(coeffs)
    out = [complex(z) for z, _ in roots]
    if left:
        num = np.roots([complex(c) for c in reversed(coeffs)])
        exact = out[:]
        for z in num:
            if all(abs(z - e) > 1e-8 for e in exact):
                out.append(complex(z))
    return sorted(set(out), key=lambda z: (round(z.real, 12), round(z.imag, 12)))


@dataclass
class RiccatiEq:
    a: RationalFn2
    b: RationalFn2
    c: RationalFn2
    singular_times: Tuple[complex, ...] = ()
    base_field: Optional[RationalFn2] = None

    def __post_init__(self):
        self.a, self.b, self.c = _parse_t(self.a), _parse_t(self.b), _parse_t(self.c)
        if self.base_field is not None:
            self.base_field = _parse_t(self.base_field)
        poles = set()
        for r in (self.a, self.b, self.c):
            poles.update(_poles(r))
        if self.base_field is not None:
            zeros = RationalFn2(self.base_field.den) / RationalFn2(self.base_field.num)
            poles.update(_poles(zeros))
        declared = list(self.singular_times)
        for p in sorted(poles, key=lambda z: (z.real, z.imag)):
            if all(abs(p - q) > 1e-12 for q in declared):
                declared.append(p)
        self.singular_times = tuple(complex(z) for z in declared)
        self._a, self._b, self._c = (CompiledRational(r) for r in (self.a, self.b, self.c))
        self._f = CompiledRational(self.base_field) if self.base_field is not None else None

    @classmethod
    def parse(cls, a: str, b: str, c: str, base_field: Optional[str] = None,
              singular_times: Sequence[complex] = ()) -> "RiccatiEq":
        return cls(a, b, c, tuple(singular_times), base_field)

    @classmethod
    def from_json(cls, data) -> "RiccatiEq":
        if isinstance(data, str):
            data = json.loads(data)
        st = [complex(*p) if isinstance(p, (list, tuple)) else complex(p) for p in data.get("singular_times", [])]
        return cls(data["a"], data["b"], data["c"], tuple(st), data.get("base_field"))

    def to_json(self) -> dict:
        out = {"a": self.a.to_string("t", "s"), "b": self.b.to_string("t", "s"), "c": self.c.to_string("t", "s"),
               "singular_times": [[z.real, z.imag] for z in self.singular_times]}
        if self.base_field is not None:
            out["base_field"] = self.base_field.to_string("t", "s")
        return out

    def rhs(self, t: complex, w: complex) -> complex:
        return self._a(t) + self._b(t) * w + self._c(t) * w * w

    def lift_matrix(self, t: complex) -> np.ndarray:
        a, b, c = self._a(t), self._b(t), self._c(t)
        return np.array([[b / 2, a], [-c, -b / 2]], dtype=complex)

    def _system(self, t: complex, y: np.ndarray) -> np.ndarray:
        m = self.lift_matrix(t)
        u = y[:4].reshape(2, 2)
        du = (m @ u).reshape(4)
        dt = 1.0 / self._f(t) if self._f is not None else 1.0
        return np.concatenate([du, [dt]])

    def clearance(self, loop: PathSpec) -> float:
        return min((loop.distance_to(p) for p in self.singular_times), default=float("inf"))


@dataclass
class LoopMonodromy:
    loop: PathSpec
    map: Mobius
    time_period: complex
    error_estimate: float
    det_defect: float


@dataclass
class MonodromyRep:
    generators: List[Tuple[PathSpec, Mobius]]
    time_periods: List[complex]
    error_estimates: List[float] = field(default_factory=list)
    det_defects: List[float] = field(default_factory=list)

    @property
    def maps(self) -> List[Mobius]:
        return [m for _, m in self.generators]

    def to_json(self) -> dict:
        return {"generators": [{"loop": None if loop is None else loop.to_json(), **m.to_json(),
                                "lifts": "both signs (+M, -M) represent the same map",
                                "distance_to_identity": m.distance_to_identity()} for loop, m in self.generators],
                "time_periods": [[z.real, z.imag] for z in self.time_periods],
                "error_estimates": list(self.error_estimates), "det_defects": list(self.det_defects)}


class MonodromyError(ArithmeticError):
    def __init__(self, message: str, loop_id: int):
        super().__init__(f"loop {loop_id}: {message}")
        self.loop_id = loop_id


def loop_monodromy(eq: RiccatiEq, loop: PathSpec, tol: float = 1e-11, loop_id: int = 0,
                   clearance: float = DEFAULT_CLEARANCE) -> LoopMonodromy:
    if not loop.is_closed():
        raise MonodromyError("path is not a closed loop", loop_id)
    if eq.clearance(loop) < clearance:
        raise MonodromyError("loop passes through (or too close to) a singular time", loop_id)
    y0 = np.array([1, 0, 0, 1, 0], dtype=complex)
    res = integrate_path(eq._system, y0, loop, tol)
    if res.outcome is not Outcome.COMPLETED:
        raise MonodromyError(f"integration failed: {res.outcome.value} ({res.reason})", loop_id)
    u = np.array(res.endpoint[:4], dtype=complex).reshape(2, 2)
    det = complex(np.linalg.det(u))
    defect = abs(det - 1)
    if defect > DET_TOL or not np.all(np.isfinite(u)):
        raise MonodromyError(f"fundamental matrix ill-conditioned (|det - 1| = {defect:.3g})", loop_id)
    return LoopMonodromy(loop, Mobius.from_matrix(u), res.endpoint[4], res.error_estimate, defect)


def monodromy(eq: RiccatiEq, loops: Sequence[PathSpec], tol: float = 1e-11,
              clearance: float = DEFAULT_CLEARANCE) -> MonodromyRep:
    """Monodromy of ``eq`` along each loop (computed concurrently, merged in input order)."""
    jobs = list(enumerate(loops))
    results = parallel_map(lambda j: loop_monodromy(eq, j[1], tol, j[0], clearance), jobs)
    return MonodromyRep([(r.loop, r.map) for r in results], [r.time_period for r in results],
                        [r.error_estimate for r in results], [r.det_defect for r in results])


# ---------------------------------------------------------------------------
# Wittich's equation, whose solutions (t - 1/t^2) tan(t^2/2 + 1/t + c) are single-valued

WITTICH = {"a": "(t^3-1)^2/t^4", "b": "(t^3+2)/(t*(t^3-1))", "c": "1"}
WITTICH_BASE = 0.6
WITTICH_RADIUS = 0.25


def wittich_equation() -> RiccatiEq:
    return RiccatiEq.parse(WITTICH["a"], WITTICH["b"], WITTICH["c"])


def wittich_loops(base: complex = WITTICH_BASE, radius: float = WITTICH_RADIUS) -> List[PathSpec]:
    """Lassos from a common base point around ``0`` and the cube roots of unity."""
    import cmath

    centers = [0j] + [cmath.exp(2j * cmath.pi * k / 3) for k in range(3)]
    return [PathSpec.lasso(base, c, radius) for c in centers]


def wittich_solution(c: complex):
    import cmath

    return lambda t: (t - 1 / t ** 2) * cmath.tan(t ** 2 / 2 + 1 / t + c)
