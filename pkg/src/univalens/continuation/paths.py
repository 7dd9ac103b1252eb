"""Polygonal paths in the complex time plane."""

from __future__ import annotations

import cmath
import enum
import json
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

CLOSURE_TOL = 1e-12


class PathKind(str, enum.Enum):
    SEGMENT = "segment"
    LOOP = "loop"
    LATTICE_LOOP = "lattice_loop"


def _as_complex(v) -> complex:
    if isinstance(v, (list, tuple)):
        return complex(float(v[0]), float(v[1]))
    return complex(v)


@dataclass(frozen=True)
class PathSpec:
    """A polyline ``waypoints[0] -> waypoints[1] -> ...`` in the time plane."""

    waypoints: Tuple[complex, ...]
    kind: PathKind = PathKind.SEGMENT
    period: Optional[complex] = None

    def __post_init__(self):
        object.__setattr__(self, "waypoints", tuple(_as_complex(w) for w in self.waypoints))
        object.__setattr__(self, "kind", PathKind(self.kind))
        if len(self.waypoints) < 2:
            raise ValueError("a path needs at least two waypoints")
        gap = self.waypoints[-1] - self.waypoints[0]
        if self.kind is PathKind.LOOP and abs(gap) > CLOSURE_TOL:
            raise ValueError("loop is not closed (first and last waypoints differ)")
        if self.kind is PathKind.LATTICE_LOOP:
            if self.period is None:
                raise ValueError("lattice loop needs a period")
            object.__setattr__(self, "period", _as_complex(self.period))
            if abs(gap - self.period) > CLOSURE_TOL:
                raise ValueError("lattice loop must end at start + period")

    # construction ---------------------------------------------------------

    @classmethod
    def segment(cls, a, b) -> "PathSpec":
        return cls((a, b), PathKind.SEGMENT)

    @classmethod
    def polyline(cls, points: Sequence) -> "PathSpec":
        pts = tuple(_as_complex(p) for p in points)
        kind = PathKind.LOOP if abs(pts[-1] - pts[0]) <= CLOSURE_TOL and len(pts) > 2 else PathKind.SEGMENT
        return cls(pts, kind)

    @classmethod
    def circle(cls, center, radius: float, start_angle: float = 0.0, n: int = 48,
               clockwise: bool = False) -> "PathSpec":
        """Closed polygon with ``n`` sides inscribed in the circle, starting at ``start_angle``."""
        c = _as_complex(center)
        sign = -1.0 if clockwise else 1.0
        pts = [c + radius * cmath.exp(1j * (start_angle + sign * 2 * cmath.pi * k / n)) for k in range(n)]
        pts.append(pts[0])
        return cls(tuple(pts), PathKind.LOOP)

    @classmethod
    def lasso(cls, base, center, radius: float, n: int = 48, clockwise: bool = False) -> "PathSpec":
        """Go from ``base`` towards ``center``, once around the circle, and back."""
        b, c = _as_complex(base), _as_complex(center)
        if abs(b - c) <= radius:
            raise ValueError("base point lies inside the lasso circle")
        angle = cmath.phase(b - c)
        ring = cls.circle(c, radius, angle, n, clockwise).waypoints
        return cls((b,) + ring + (b,), PathKind.LOOP)

    @classmethod
    def lattice_loop(cls, start, period, via: Sequence = ()) -> "PathSpec":
        s, p = _as_complex(start), _as_complex(period)
        return cls((s,) + tuple(_as_complex(v) for v in via) + (s + p,), PathKind.LATTICE_LOOP, p)

    # operations -----------------------------------------------------------

    @property
    def start(self) -> complex:
        return self.waypoints[0]

    @property
    def end(self) -> complex:
        return self.waypoints[-1]

    def is_closed(self) -> bool:
        return self.kind is PathKind.LOOP

    def segments(self) -> List[Tuple[complex, complex]]:
        w = self.waypoints
        return [(w[i], w[i + 1]) for i in range(len(w) - 1) if w[i] != w[i + 1]]

    def length(self) -> float:
        return sum(abs(b - a) for a, b in self.segments())

    def reversed(self) -> "PathSpec":
        pts = tuple(reversed(self.waypoints))
        if self.kind is PathKind.LATTICE_LOOP:
            return PathSpec(pts, PathKind.LATTICE_LOOP, -self.period)
        return PathSpec(pts, self.kind)

    def then(self, other: "PathSpec") -> "PathSpec":
        if abs(self.end - other.start) > CLOSURE_TOL:
            raise ValueError("paths do not join")
        pts = self.waypoints + other.waypoints[1:]
        return PathSpec.polyline(pts)

    def translated(self, shift) -> "PathSpec":
        d = _as_complex(shift)
        return PathSpec(tuple(w + d for w in self.waypoints), self.kind, self.period)

    def distance_to(self, point) -> float:
        """Euclidean distance from a point to the polyline."""
        p = _as_complex(point)
        best = float("inf")
        for a, b in self.segments():
            d = b - a
            u = ((p - a) * d.conjugate()).real / abs(d) ** 2
            u = min(1.0, max(0.0, u))
            best = min(best, abs(a + u * d - p))
        return best

    def winding_number(self, point) -> int:
        """Winding number of a closed path around a point not on it."""
        p = _as_complex(point)
        total = 0.0
        for a, b in self.segments():
            total += cmath.phase((b - p) / (a - p))
        return round(total / (2 * cmath.pi))

    # serialization --------------------------------------------------------

    def to_json(self) -> dict:
        out = {"kind": self.kind.value, "waypoints": [[w.real, w.imag] for w in self.waypoints]}
        if self.period is not None:
            out["period"] = [self.period.real, self.period.imag]
        return out

    @classmethod
    def from_json(cls, data) -> "PathSpec":
        if isinstance(data, str):
            data = json.loads(data)
        kind = data.get("kind", "segment")
        if kind == "circle":
            return cls.circle(data["center"], float(data["radius"]), float(data.get("start_angle", 0.0)),
                              int(data.get("n", 48)))
        if kind == "lasso":
            return cls.lasso(data["base"], data["center"], float(data["radius"]), int(data.get("n", 48)))
        return cls(tuple(data["waypoints"]), PathKind(kind), data.get("period"))


def loads_paths(text: str) -> List[PathSpec]:
    data = json.loads(text)
    if isinstance(data, dict):
        data = data.get("loops", data.get("paths", [data]))
    return [PathSpec.from_json(d) for d in data]
