"""Floating-point evaluation of exact rational data."""

from __future__ import annotations

from typing import Callable, List, Tuple

import numpy as np

from ..algebra import BiPoly, RationalFn2
from ..algebra.fields import RationalVF2
from .integrator import EscapeSignal

POLE_EPS = 1e-9
ESCAPE_RADIUS = 1e8


class CompiledPoly:
    """A bivariate polynomial with complex float coefficients, Horner in ``x``."""

    __slots__ = ("rows", "deg_y")

    def __init__(self, p: BiPoly):
        by_y = {}
        for (i, j), c in p.items():
            by_y.setdefault(j, {})[i] = complex(c)
        self.deg_y = max(by_y, default=0)
        self.rows = []
        for j in range(self.deg_y + 1):
            row = by_y.get(j, {})
            n = max(row, default=-1) + 1
            self.rows.append([row.get(i, 0j) for i in range(n)][::-1])

    def __call__(self, x: complex, y: complex) -> complex:
        total = 0j
        for row in reversed(self.rows):
            acc = 0j
            for c in row:
                acc = acc * x + c
            total = total * y + acc
        return total


class CompiledRational:
    __slots__ = ("num", "den", "den_constant", "den_x", "den_y")

    def __init__(self, r: RationalFn2):
        self.num = CompiledPoly(r.num)
        self.den = CompiledPoly(r.den)
        self.den_constant = r.den.is_constant()
        self.den_x = CompiledPoly(r.den.diff_x())
        self.den_y = CompiledPoly(r.den.diff_y())

    def pole_distance(self, x: complex, y: complex) -> float:
        """Newton estimate ``|d| / |grad d|`` of the distance to the denominator's zeros."""
        if self.den_constant:
            return float("inf")
        d = abs(self.den(x, y))
        g = max(abs(self.den_x(x, y)), abs(self.den_y(x, y)))
        return d / g if g > 0 else (float("inf") if d > 0 else 0.0)

    def __call__(self, x: complex, y: complex = 0j) -> complex:
        return self.num(x, y) / self.den(x, y)


class NumericField:
    """The planar field ``(px, py)`` evaluated in floating point, with a pole guard."""

    def __init__(self, vf: RationalVF2, pole_eps: float = POLE_EPS, escape_radius: float = ESCAPE_RADIUS):
        self.vf = vf
        self.px = CompiledRational(vf.px)
        self.py = CompiledRational(vf.py)
        self.pole_eps = pole_eps
        self.escape_radius = escape_radius

    def __call__(self, t: complex, state: np.ndarray) -> np.ndarray:
        x, y = state[0], state[1]
        return np.array([self.px(x, y), self.py(x, y)], dtype=complex)

    def pole_distance(self, x: complex, y: complex) -> float:
        scale = 1.0 + abs(x) + abs(y)
        return min(self.px.pole_distance(x, y), self.py.pole_distance(x, y)) / scale

    def on_pole_locus(self, x: complex, y: complex) -> bool:
        return self.pole_distance(x, y) < self.pole_eps

    def guard(self, state: np.ndarray) -> None:
        x, y = complex(state[0]), complex(state[1])
        if max(abs(x), abs(y)) > self.escape_radius:
            raise EscapeSignal("left every compact set (norm above escape radius)")
        if self.pole_distance(x, y) < self.pole_eps:
            raise EscapeSignal("reached the pole locus")
