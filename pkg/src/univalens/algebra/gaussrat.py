"""Exact Gaussian rationals.

Elements of Q(i) stored as a pair of :class:`fractions.Fraction` values.
Every instance is immutable and hashable, so it can be used as a
dictionary key or coefficient without defensive copying.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a Fraction or a string")
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


class GaussRat:
    """An element ``re + im*i`` of the Gaussian rationals."""

    __slots__ = ("re", "im", "_hash")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("GaussRat is immutable")

    @classmethod
    def coerce(cls, value) -> "GaussRat":
        if isinstance(value, GaussRat):
            return value
        if isinstance(value, complex):
            raise TypeError("complex floats are not exact")
        if isinstance(value, tuple) and len(value) == 2:
            return cls(value[0], value[1])
        return cls(value, 0)

    # predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def is_integer(self) -> bool:
        return not self.im and self.re.denominator == 1

    def __bool__(self) -> bool:
        return not self.is_zero()

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, GaussRat):
            try:
                other = GaussRat.coerce(other)
            except TypeError:
                return NotImplemented
        if not self.im and not other.im:
            return GaussRat(self.re + other.re)
        return GaussRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __sub__(self, other):
        if not isinstance(other, GaussRat):
            try:
                other = GaussRat.coerce(other)
            except TypeError:
                return NotImplemented
        return GaussRat(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussRat.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, GaussRat):
            try:
                other = GaussRat.coerce(other)
            except TypeError:
                return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussRat(a * c)
        return GaussRat(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> "GaussRat":
        if self.is_zero():
            raise ZeroDivisionError("GaussRat division by zero")
        if not self.im:
            return GaussRat(1 / self.re)
        n = self.re * self.re + self.im * self.im
        return GaussRat(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if not isinstance(other, GaussRat):
            try:
                other = GaussRat.coerce(other)
            except TypeError:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussRat.coerce(other) * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result, base = ONE, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    # comparison and hashing -------------------------------------------
    def __eq__(self, other):
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.re, self.im)) if self.im else hash(self.re)
            object.__setattr__(self, "_hash", h)
        return h

    # conversion -------------------------------------------------------
    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def to_pair(self) -> tuple[str, str]:
        return (str(self.re), str(self.im))

    @classmethod
    def from_pair(cls, pair) -> "GaussRat":
        return cls(Fraction(str(pair[0])), Fraction(str(pair[1])))

    def __repr__(self):
        return f"GaussRat({self})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return _imag_str(self.im)
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{_imag_str(abs(self.im))})"


def _imag_str(v: Fraction) -> str:
    if v == 1:
        return "i"
    if v == -1:
        return "-i"
    return f"{v}*i"


ZERO = GaussRat(0)
ONE = GaussRat(1)
I = GaussRat(0, 1)


def as_rational(value: GaussRat) -> Fraction:
    """Return the real part of ``value``, insisting that it is real."""
    if value.im:
        raise ValueError(f"{value} is not a real rational")
    return value.re
