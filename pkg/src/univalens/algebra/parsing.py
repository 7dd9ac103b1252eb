"""Parser for the plain-text polynomial and vector-field grammar.

Accepted input looks like ``(3/2+1/3*i)*x^2*y - y`` with the operators
``+ - * / ^`` and parentheses.  A parenthesized pair ``(P, Q)`` denotes a
vector field ``P d/dx + Q d/dy`` and may be multiplied by a scalar
expression, so ``x*y*(2*x,-y)`` is the field ``xy(2x d/dx - y d/dy)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

from .bipoly import BiPoly
from .gaussrat import GaussRat
from .rational import RationalFn2


class ParseError(ValueError):
    """Syntax error with the character offset where it was detected."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")

    def pointer(self) -> str:
        return f"{self.text}\n{' ' * self.position}^"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


@dataclass(frozen=True)
class _Tok:
    kind: str  # "num", "name", "op", "end"
    value: str
    pos: int


def _tokenize(text: str) -> List[_Tok]:
    toks, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            toks.append(_Tok("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            toks.append(_Tok("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            toks.append(_Tok("op", m.group(3), m.start(3)))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Vec:
    __slots__ = ("px", "py")

    def __init__(self, px: RationalFn2, py: RationalFn2):
        self.px, self.py = px, py


Value = Union[RationalFn2, _Vec]


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.vars = {name: k for k, name in enumerate(variables)}

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, message: str, tok: _Tok = None):
        tok = tok or self.peek()
        raise ParseError(message, tok.pos, self.text)

    def expect(self, op: str):
        t = self.take()
        if t.kind != "op" or t.value != op:
            self.error(f"expected '{op}'", t)

    def parse(self) -> Value:
        v = self.sum()
        if self.peek().kind != "end":
            self.error("unexpected token")
        return v

    def sum(self) -> Value:
        v = self.product()
        while self.peek().kind == "op" and self.peek().value in "+-":
            op = self.take()
            w = self.product()
            v = self.combine(v, w, op)
        return v

    def product(self) -> Value:
        v = self.unary()
        while self.peek().kind == "op" and self.peek().value in "*/":
            op = self.take()
            w = self.unary()
            v = self.combine(v, w, op)
        return v

    def unary(self) -> Value:
        t = self.peek()
        if t.kind == "op" and t.value in "+-":
            self.take()
            v = self.unary()
            return v if t.value == "+" else self.combine(RationalFn2(BiPoly.const(-1)), v, _Tok("op", "*", t.pos))
        return self.power()

    def power(self) -> Value:
        base = self.atom()
        if self.peek().kind == "op" and self.peek().value == "^":
            op = self.take()
            paren = self.peek().kind == "op" and self.peek().value == "("
            if paren:
                self.take()
            sign = 1
            if self.peek().kind == "op" and self.peek().value in "+-":
                sign = -1 if self.take().value == "-" else 1
            t = self.take()
            if t.kind != "num":
                self.error("exponent must be an integer literal", t)
            if paren:
                self.expect(")")
            if isinstance(base, _Vec):
                self.error("cannot raise a vector to a power", op)
            return base ** (sign * int(t.value))
        return base

    def atom(self) -> Value:
        t = self.take()
        if t.kind == "num":
            return RationalFn2(BiPoly.const(int(t.value)))
        if t.kind == "name":
            if t.value == "i":
                return RationalFn2(BiPoly.const(GaussRat(0, 1)))
            if t.value not in self.vars:
                self.error(f"unknown variable '{t.value}'", t)
            k = self.vars[t.value]
            return RationalFn2(BiPoly.monomial(1, 0) if k == 0 else BiPoly.monomial(0, 1))
        if t.kind == "op" and t.value == "(":
            first = self.sum()
            if self.peek().kind == "op" and self.peek().value == ",":
                self.take()
                second = self.sum()
                self.expect(")")
                if isinstance(first, _Vec) or isinstance(second, _Vec):
                    self.error("nested vector", t)
                return _Vec(first, second)
            self.expect(")")
            return first
        self.error("unexpected token", t)

    def combine(self, a: Value, b: Value, op: _Tok) -> Value:
        o = op.value
        av, bv = isinstance(a, _Vec), isinstance(b, _Vec)
        if o in "+-":
            if av != bv:
                self.error("cannot add a scalar and a vector", op)
            if av:
                return _Vec(a.px + b.px, a.py + b.py) if o == "+" else _Vec(a.px - b.px, a.py - b.py)
            return a + b if o == "+" else a - b
        if o == "*":
            if av and bv:
                self.error("cannot multiply two vectors", op)
            if av:
                return _Vec(a.px * b, a.py * b)
            if bv:
                return _Vec(b.px * a, b.py * a)
            return a * b
        if bv:
            self.error("cannot divide by a vector", op)
        if b.is_zero():
            self.error("division by zero", op)
        if av:
            return _Vec(a.px / b, a.py / b)
        return a / b


def _pick_variables(text: str, variables) -> Tuple[str, str]:
    if variables is not None:
        return tuple(variables)
    names = set(re.findall(r"[A-Za-z_][A-Za-z_0-9]*", text)) - {"i"}
    if names & {"z", "w"} and not names & {"x", "y"}:
        return ("z", "w")
    if names & {"t"} and not names & {"x", "y", "z", "w"}:
        return ("t", "s")
    return ("x", "y")


def parse_rational(text: str, variables=None) -> RationalFn2:
    """Parse a scalar expression into a :class:`RationalFn2`."""
    v = _Parser(text, _pick_variables(text, variables)).parse()
    if isinstance(v, _Vec):
        raise ParseError("expected a scalar expression, got a vector", 0, text)
    return v


def parse_poly(text: str, variables=None) -> BiPoly:
    r = parse_rational(text, variables)
    if not r.is_polynomial():
        raise ParseError("expected a polynomial", 0, text)
    return r.num.scale(r.den.constant_term().inverse())


def parse_pair(text: str, variables=None) -> Tuple[RationalFn2, RationalFn2]:
    """Parse ``(P, Q)``, ``f*(P, Q)`` or ``P, Q`` into two components."""
    vars_ = _pick_variables(text, variables)
    stripped = text.strip()
    try:
        v = _Parser(stripped, vars_).parse()
    except ParseError:
        v = _Parser(f"({stripped})", vars_).parse()
    if not isinstance(v, _Vec):
        raise ParseError("expected a vector field such as (P, Q)", 0, text)
    return v.px, v.py


def parse_number(text: str) -> GaussRat:
    r = parse_rational(text, ("x", "y"))
    if not r.is_constant():
        raise ParseError("expected a constant", 0, text)
    return r.num.constant_term() / r.den.constant_term()


def parse_point(text: str) -> Tuple[GaussRat, GaussRat]:
    """Parse ``a,b`` into an exact point."""
    parts = _split_top_level(text.strip().strip("()"))
    if len(parts) != 2:
        raise ParseError("expected a point 'a,b'", 0, text)
    return parse_number(parts[0]), parse_number(parts[1])


def _split_top_level(text: str) -> List[str]:
    depth, cur, out = 0, "", []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    return out


def fraction_of(text: str) -> Fraction:
    g = parse_number(text)
    if g.im:
        raise ParseError("expected a real rational", 0, text)
    return g.re
