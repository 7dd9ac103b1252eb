"""Sparse bivariate polynomials over the Gaussian rationals.

A :class:`BiPoly` maps exponent pairs ``(i, j)`` (meaning ``x^i y^j``) to
nonzero :class:`GaussRat` coefficients.  Instances are immutable; all
operations return new polynomials.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple

from .gaussrat import GaussRat, ONE, ZERO

Monomial = Tuple[int, int]


class BiPoly:
    """Polynomial ``sum c_ij x^i y^j`` with exact coefficients."""

    __slots__ = ("_terms", "_degree", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, object]] = None):
        clean: Dict[Monomial, GaussRat] = {}
        if terms:
            for (i, j), c in terms.items():
                if i < 0 or j < 0:
                    raise ValueError("negative exponent in polynomial")
                c = GaussRat.coerce(c)
                if not c.is_zero():
                    clean[(int(i), int(j))] = c
        self._terms = clean
        self._degree = None
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, GaussRat]) -> "BiPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._degree = None
        obj._hash = None
        return obj

    # constructors -----------------------------------------------------
    @classmethod
    def const(cls, c) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i: int, j: int, c=1) -> "BiPoly":
        return cls({(i, j): c})

    @classmethod
    def x(cls) -> "BiPoly":
        return cls.monomial(1, 0)

    @classmethod
    def y(cls) -> "BiPoly":
        return cls.monomial(0, 1)

    @classmethod
    def coerce(cls, value) -> "BiPoly":
        if isinstance(value, BiPoly):
            return value
        return cls.const(value)

    # accessors --------------------------------------------------------
    @property
    def terms(self) -> Dict[Monomial, GaussRat]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Monomial, GaussRat]]:
        return iter(self._terms.items())

    def coeff(self, i: int, j: int) -> GaussRat:
        return self._terms.get((i, j), ZERO)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(m == (0, 0) for m in self._terms)

    def constant_term(self) -> GaussRat:
        return self._terms.get((0, 0), ZERO)

    @property
    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        if self._degree is None:
            self._degree = max((i + j for i, j in self._terms), default=-1)
        return self._degree

    def degree_x(self) -> int:
        return max((i for i, _ in self._terms), default=-1)

    def degree_y(self) -> int:
        return max((j for _, j in self._terms), default=-1)

    def order(self) -> int:
        """Lowest total degree of a term (vanishing order at the origin)."""
        return min((i + j for i, j in self._terms), default=-1)

    def uses_x(self) -> bool:
        return any(i for i, _ in self._terms)

    def uses_y(self) -> bool:
        return any(j for _, j in self._terms)

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(m, None)
            else:
                out[m] = s
        return BiPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return BiPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (GaussRat, int)) or _is_fraction(other):
            return self.scale(other)
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if len(self._terms) > len(other._terms):
            a, b = other._terms, self._terms
        else:
            a, b = self._terms, other._terms
        out: Dict[Monomial, GaussRat] = {}
        for (i1, j1), c1 in a.items():
            for (i2, j2), c2 in b.items():
                m = (i1 + i2, j1 + j2)
                s = out.get(m)
                out[m] = c1 * c2 if s is None else s + c1 * c2
        return BiPoly._raw({m: c for m, c in out.items() if not c.is_zero()})

    __rmul__ = __mul__

    def scale(self, c) -> "BiPoly":
        c = GaussRat.coerce(c)
        if c.is_zero():
            return BiPoly()
        if c == ONE:
            return self
        return BiPoly._raw({m: v * c for m, v in self._terms.items()})

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result, base = BiPoly.const(1), self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def shift_monomial(self, a: int, b: int) -> "BiPoly":
        """Multiply by ``x^a y^b``; negative shifts must divide exactly."""
        out = {}
        for (i, j), c in self._terms.items():
            if i + a < 0 or j + b < 0:
                raise ValueError("monomial shift leaves the polynomial ring")
            out[(i + a, j + b)] = c
        return BiPoly._raw(out)

    def monomial_content(self) -> Monomial:
        """Largest ``(a, b)`` such that ``x^a y^b`` divides the polynomial."""
        if not self._terms:
            return (0, 0)
        return (min(i for i, _ in self._terms), min(j for _, j in self._terms))

    # calculus and substitution ----------------------------------------
    def diff_x(self) -> "BiPoly":
        return BiPoly._raw({(i - 1, j): c * i for (i, j), c in self._terms.items() if i})

    def diff_y(self) -> "BiPoly":
        return BiPoly._raw({(i, j - 1): c * j for (i, j), c in self._terms.items() if j})

    def __call__(self, x0, y0) -> GaussRat:
        return self.evaluate(x0, y0)

    def evaluate(self, x0, y0) -> GaussRat:
        x0 = GaussRat.coerce(x0)
        y0 = GaussRat.coerce(y0)
        xp = _powers(x0, self.degree_x())
        yp = _powers(y0, self.degree_y())
        total = ZERO
        for (i, j), c in self._terms.items():
            total = total + c * xp[i] * yp[j]
        return total

    def evaluate_complex(self, x0: complex, y0: complex) -> complex:
        total = 0j
        for (i, j), c in self._terms.items():
            total += complex(c) * (x0 ** i) * (y0 ** j)
        return total

    def substitute(self, px: "BiPoly", py: "BiPoly") -> "BiPoly":
        """Return ``P(px(x, y), py(x, y))``."""
        xp = _powers(px, self.degree_x(), BiPoly.const(1))
        yp = _powers(py, self.degree_y(), BiPoly.const(1))
        total = BiPoly()
        for (i, j), c in self._terms.items():
            total = total + (xp[i] * yp[j]).scale(c)
        return total

    def translate(self, a, b) -> "BiPoly":
        """Return ``P(x + a, y + b)``."""
        a = GaussRat.coerce(a)
        b = GaussRat.coerce(b)
        if a.is_zero() and b.is_zero():
            return self
        return self.substitute(BiPoly({(1, 0): 1, (0, 0): a}), BiPoly({(0, 1): 1, (0, 0): b}))

    def swap(self) -> "BiPoly":
        return BiPoly._raw({(j, i): c for (i, j), c in self._terms.items()})

    def restrict_x(self, x0) -> list:
        """Dense coefficient list (ascending) of ``P(x0, y)`` in ``y``."""
        x0 = GaussRat.coerce(x0)
        coeffs = [ZERO] * (self.degree_y() + 1)
        xp = _powers(x0, self.degree_x())
        for (i, j), c in self._terms.items():
            coeffs[j] = coeffs[j] + c * xp[i]
        return _trim(coeffs)

    def restrict_y(self, y0) -> list:
        """Dense coefficient list (ascending) of ``P(x, y0)`` in ``x``."""
        return self.swap().restrict_x(y0)

    def homogeneous_part(self, k: int) -> "BiPoly":
        return BiPoly._raw({m: c for m, c in self._terms.items() if m[0] + m[1] == k})

    def truncate(self, n: int) -> "BiPoly":
        """Drop all terms of total degree greater than ``n``."""
        return BiPoly._raw({m: c for m, c in self._terms.items() if m[0] + m[1] <= n})

    # division ---------------------------------------------------------
    def leading(self) -> Tuple[Monomial, GaussRat]:
        """Lexicographically largest term (x before y)."""
        m = max(self._terms)
        return m, self._terms[m]

    def divmod_lex(self, d: "BiPoly") -> Tuple["BiPoly", "BiPoly"]:
        """Division by a single polynomial in lex order.

        With one divisor the remainder is unique, so ``d`` divides ``self``
        exactly iff the remainder vanishes.
        """
        if d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        (di, dj), dc = d.leading()
        dinv = dc.inverse()
        rem = dict(self._terms)
        quo: Dict[Monomial, GaussRat] = {}
        out: Dict[Monomial, GaussRat] = {}
        while rem:
            m = max(rem)
            c = rem[m]
            if m[0] >= di and m[1] >= dj:
                qm = (m[0] - di, m[1] - dj)
                qc = c * dinv
                quo[qm] = quo.get(qm, ZERO) + qc
                for (i, j), v in d._terms.items():
                    t = (i + qm[0], j + qm[1])
                    s = rem.get(t, ZERO) - v * qc
                    if s.is_zero():
                        rem.pop(t, None)
                    else:
                        rem[t] = s
            else:
                out[m] = c
                del rem[m]
        return BiPoly(quo), BiPoly._raw(out)

    def exact_div(self, d: "BiPoly") -> Optional["BiPoly"]:
        """Quotient ``self / d`` when it is a polynomial, else ``None``."""
        if d.is_constant():
            return self.scale(d.constant_term().inverse())
        q, r = self.divmod_lex(d)
        return q if r.is_zero() else None

    def valuation(self, curve: "BiPoly") -> float:
        """Largest ``k`` with ``curve^k`` dividing ``self`` (``inf`` for zero)."""
        if self.is_zero():
            return float("inf")
        if curve.is_constant():
            raise ValueError("valuation along a constant")
        k, cur = 0, self
        while True:
            q = cur.exact_div(curve)
            if q is None:
                return k
            k, cur = k + 1, q

    def monic(self) -> Tuple[GaussRat, "BiPoly"]:
        """Return ``(c, P/c)`` with ``c`` the lex-leading coefficient."""
        if self.is_zero():
            return ONE, self
        _, c = self.leading()
        return c, self.scale(c.inverse())

    # comparison, hashing, display -------------------------------------
    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self._terms == other._terms
        try:
            return self._terms == BiPoly.coerce(other)._terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def sorted_terms(self) -> list:
        return sorted(self._terms.items(), key=lambda t: (-(t[0][0] + t[0][1]), -t[0][0]))

    def to_string(self, var_x: str = "x", var_y: str = "y") -> str:
        if not self._terms:
            return "0"
        pieces = []
        for (i, j), c in self.sorted_terms():
            mono = []
            if i:
                mono.append(var_x if i == 1 else f"{var_x}^{i}")
            if j:
                mono.append(var_y if j == 1 else f"{var_y}^{j}")
            cs = str(c)
            if not mono:
                pieces.append(cs)
            elif c == ONE:
                pieces.append("*".join(mono))
            elif c == -ONE:
                pieces.append("-" + "*".join(mono))
            else:
                pieces.append(cs + "*" + "*".join(mono))
        text = pieces[0]
        for p in pieces[1:]:
            text += " - " + p[1:] if p.startswith("-") else " + " + p
        return text

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"BiPoly({self.to_string()})"

    def to_json(self) -> list:
        return [[i, j, str(c.re), str(c.im)] for (i, j), c in sorted(self._terms.items())]

    @classmethod
    def from_json(cls, data: Iterable) -> "BiPoly":
        return cls({(int(t[0]), int(t[1])): GaussRat.from_pair((t[2], t[3])) for t in data})


def _is_fraction(v) -> bool:
    from fractions import Fraction
    return isinstance(v, Fraction)


def _coerce_or_none(value) -> Optional[BiPoly]:
    if isinstance(value, BiPoly):
        return value
    try:
        return BiPoly.const(GaussRat.coerce(value))
    except TypeError:
        return None


def _powers(base, n: int, one=ONE) -> list:
    out = [one]
    for _ in range(max(n, 0)):
        out.append(out[-1] * base)
    return out


def _trim(coeffs: list) -> list:
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return coeffs


X = BiPoly.x()
Y = BiPoly.y()
