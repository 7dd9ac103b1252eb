"""Rational functions of two variables with normalized numerator/denominator."""

from __future__ import annotations

from typing import Optional, Tuple

from . import cas
from .bipoly import BiPoly
from .gaussrat import GaussRat, ONE


class RationalFn2:
    """A quotient ``num/den`` with ``gcd(num, den) = 1`` and monic ``den``."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, *, normalized: bool = False):
        num = BiPoly.coerce(num)
        den = BiPoly.const(1) if den is None else BiPoly.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not normalized:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def coerce(cls, value) -> "RationalFn2":
        if isinstance(value, RationalFn2):
            return value
        return cls(BiPoly.coerce(value))

    def normalized(self) -> "RationalFn2":
        return RationalFn2(self.num, self.den)

    # predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return RationalFn2(self.num + other.num, self.den)
        return RationalFn2(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn2(-self.num, self.den, normalized=True)

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return RationalFn2.coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return RationalFn2(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFn2":
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RationalFn2(self.den, self.num)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RationalFn2.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return RationalFn2(self.den ** (-k), self.num ** (-k))
        return RationalFn2(self.num ** k, self.den ** k, normalized=True)

    # calculus ---------------------------------------------------------
    def diff_x(self) -> "RationalFn2":
        return RationalFn2(self.num.diff_x() * self.den - self.num * self.den.diff_x(), self.den * self.den)

    def diff_y(self) -> "RationalFn2":
        return RationalFn2(self.num.diff_y() * self.den - self.num * self.den.diff_y(), self.den * self.den)

    # evaluation and substitution ---------------------------------------
    def evaluate(self, x0, y0) -> GaussRat:
        d = self.den.evaluate(x0, y0)
        if d.is_zero():
            raise ZeroDivisionError("pole of rational function")
        return self.num.evaluate(x0, y0) / d

    def evaluate_complex(self, x0: complex, y0: complex) -> complex:
        return self.num.evaluate_complex(x0, y0) / self.den.evaluate_complex(x0, y0)

    def has_pole_at(self, x0, y0) -> bool:
        return self.den.evaluate(x0, y0).is_zero()

    def substitute(self, fx: "RationalFn2", fy: "RationalFn2") -> "RationalFn2":
        """Composition ``R(fx(x, y), fy(x, y))``."""
        fx, fy = RationalFn2.coerce(fx), RationalFn2.coerce(fy)
        n = _compose_poly(self.num, fx, fy)
        d = _compose_poly(self.den, fx, fy)
        return n / d

    def translate(self, a, b) -> "RationalFn2":
        return RationalFn2(self.num.translate(a, b), self.den.translate(a, b))

    def swap(self) -> "RationalFn2":
        return RationalFn2(self.num.swap(), self.den.swap())

    def valuation(self, curve: BiPoly) -> float:
        """Curve-adic valuation: ``v(num) - v(den)`` (``inf`` for zero)."""
        if self.is_zero():
            return float("inf")
        return self.num.valuation(curve) - self.den.valuation(curve)

    # comparison and display -------------------------------------------
    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def to_string(self, var_x: str = "x", var_y: str = "y") -> str:
        n = self.num.to_string(var_x, var_y)
        if self.den == BiPoly.const(1):
            return n
        return f"({n})/({self.den.to_string(var_x, var_y)})"

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"RationalFn2({self})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "RationalFn2":
        return cls(BiPoly.from_json(data["num"]), BiPoly.from_json(data.get("den", [[0, 0, "1", "0"]])))


def _coerce(value) -> Optional[RationalFn2]:
    if isinstance(value, RationalFn2):
        return value
    try:
        return RationalFn2(BiPoly.coerce(value), normalized=False)
    except TypeError:
        return None


def _normalize(num: BiPoly, den: BiPoly) -> Tuple[BiPoly, BiPoly]:
    if num.is_zero():
        return num, BiPoly.const(1)
    if not den.is_constant():
        a1, b1 = num.monomial_content()
        a2, b2 = den.monomial_content()
        a, b = min(a1, a2), min(b1, b2)
        if a or b:
            num, den = num.shift_monomial(-a, -b), den.shift_monomial(-a, -b)
        if len(den) > 1 and not num.is_constant():
            g = cas.gcd(num, den)
            if not g.is_constant():
                num, den = num.exact_div(g), den.exact_div(g)
    c, den = den.monic()
    if c != ONE:
        num = num.scale(c.inverse())
    return num, den


def _compose_poly(p: BiPoly, fx: RationalFn2, fy: RationalFn2) -> RationalFn2:
    dx, dy = p.degree_x(), p.degree_y()
    if p.is_zero():
        return RationalFn2(BiPoly())
    nxp = _pows(fx.num, dx)
    dxp = _pows(fx.den, dx)
    nyp = _pows(fy.num, dy)
    dyp = _pows(fy.den, dy)
    total = BiPoly()
    for (i, j), c in p.items():
        total = total + (nxp[i] * dxp[dx - i] * nyp[j] * dyp[dy - j]).scale(c)
    return RationalFn2(total, dxp[dx] * dyp[dy])


def _pows(base: BiPoly, n: int) -> list:
    out = [BiPoly.const(1)]
    for _ in range(max(n, 0)):
        out.append(out[-1] * base)
    return out
