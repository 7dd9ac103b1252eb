"""Bridge to sympy for gcd, factorization and resultants over Q(i).

Only the heavy polynomial algorithms are delegated; the data model stays
in :mod:`univalens.algebra.bipoly`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple

import sympy as sp
from sympy.polys.domains import QQ_I

from .bipoly import BiPoly
from .gaussrat import GaussRat, ONE

_X, _Y = sp.symbols("x y")


def _to_dom(c: GaussRat):
    return QQ_I(sp.Rational(c.re.numerator, c.re.denominator),
                sp.Rational(c.im.numerator, c.im.denominator))


def _from_dom(c) -> GaussRat:
    return GaussRat(Fraction(int(c.x.numerator), int(c.x.denominator)),
                    Fraction(int(c.y.numerator), int(c.y.denominator)))


def to_sympy(p: BiPoly) -> sp.Poly:
    data = {m: _to_dom(c) for m, c in p.items()}
    if not data:
        data = {(0, 0): QQ_I.zero}
    return sp.Poly.from_dict(data, _X, _Y, domain=QQ_I)


def from_sympy(p: sp.Poly) -> BiPoly:
    terms = {}
    for m, c in p.rep.to_dict().items():
        m = tuple(m) + (0,) * (2 - len(m))
        terms[(m[0], m[1])] = _from_dom(c)
    return BiPoly(terms)


def gcd(p: BiPoly, q: BiPoly) -> BiPoly:
    """Monic gcd (lex-leading coefficient 1)."""
    if p.is_zero():
        return q.monic()[1]
    if q.is_zero():
        return p.monic()[1]
    if p.is_constant() or q.is_constant():
        return BiPoly.const(1)
    return _gcd_cached(p, q)


@lru_cache(maxsize=4096)
def _gcd_cached(p: BiPoly, q: BiPoly) -> BiPoly:
    g = from_sympy(to_sympy(p).gcd(to_sympy(q)))
    return g.monic()[1]


@lru_cache(maxsize=4096)
def factor(p: BiPoly) -> Tuple[GaussRat, Tuple[Tuple[BiPoly, int], ...]]:
    """Factor into a unit times monic irreducible factors with multiplicities."""
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    unit, facs = to_sympy(p).factor_list()
    u = _from_dom(QQ_I.convert(unit)) if not isinstance(unit, GaussRat) else unit
    out = []
    for f, k in facs:
        c, fm = from_sympy(f).monic()
        u = u * c ** k
        out.append((fm, int(k)))
    out.sort(key=lambda t: (t[0].degree, t[0].to_string()))
    return u, tuple(out)


def is_irreducible(p: BiPoly) -> bool:
    if p.is_constant():
        return False
    _, facs = factor(p)
    return len(facs) == 1 and facs[0][1] == 1


def resultant_x(p: BiPoly, q: BiPoly) -> List[GaussRat]:
    """Resultant with respect to ``x`` as a dense ascending list in ``y``."""
    r = sp.resultant(to_sympy(p), to_sympy(q), _X)
    r = sp.Poly(r, _Y, domain=QQ_I) if not isinstance(r, sp.Poly) else r
    return from_univariate_sympy(r)


def to_univariate_sympy(coeffs: List[GaussRat]) -> sp.Poly:
    data = {(k,): _to_dom(c) for k, c in enumerate(coeffs) if not c.is_zero()}
    if not data:
        data = {(0,): QQ_I.zero}
    return sp.Poly.from_dict(data, _Y, domain=QQ_I)


def from_univariate_sympy(p: sp.Poly) -> List[GaussRat]:
    d = p.rep.to_dict()
    n = max((m[0] for m in d), default=-1)
    out = [GaussRat(0)] * (n + 1)
    for m, c in d.items():
        out[m[0]] = _from_dom(c)
    while out and out[-1].is_zero():
        out.pop()
    return out


def univariate_roots(coeffs: List[GaussRat]):
    """Exact roots in Q(i) with multiplicities, plus degrees of the other factors.

    Returns ``(roots, leftovers)`` where ``roots`` is a list of
    ``(root, multiplicity)`` and ``leftovers`` lists ``(degree, multiplicity)``
    for irreducible factors of degree at least two.
    """
    if not coeffs or all(c.is_zero() for c in coeffs):
        raise ValueError("roots of the zero polynomial")
    if len(coeffs) == 1:
        return [], []
    _, facs = to_univariate_sympy(coeffs).factor_list()
    roots, leftovers = [], []
    for f, k in facs:
        fc = from_univariate_sympy(f)
        if len(fc) == 2:
            roots.append((-fc[0] / fc[1], int(k)))
        else:
            leftovers.append((len(fc) - 1, int(k)))
    roots.sort(key=lambda t: (t[0].re, t[0].im))
    return roots, leftovers


def univariate_gcd(a: List[GaussRat], b: List[GaussRat]) -> List[GaussRat]:
    if not a:
        return _monic(b)
    if not b:
        return _monic(a)
    g = to_univariate_sympy(a).gcd(to_univariate_sympy(b))
    return _monic(from_univariate_sympy(g))


def _monic(c: List[GaussRat]) -> List[GaussRat]:
    if not c:
        return c
    lead = c[-1].inverse()
    return [v * lead for v in c]


ONE_POLY = BiPoly.const(ONE)
