"""Exact common zeros of two coprime bivariate polynomials.

Only points with Gaussian-rational coordinates are returned; the presence
of other (algebraic) common zeros is reported separately so callers can
surface it instead of silently dropping points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Tuple

from . import cas
from .bipoly import BiPoly
from .gaussrat import GaussRat


@dataclass
class ZeroSet:
    points: List[Tuple[GaussRat, GaussRat]] = field(default_factory=list)
    irrational: List[str] = field(default_factory=list)


def _sort_key(p):
    return (p[0].re, p[0].im, p[1].re, p[1].im)


def common_zeros(f: BiPoly, g: BiPoly) -> ZeroSet:
    """Common zeros of ``f`` and ``g``, which must have no common factor."""
    out = ZeroSet()
    if f.is_zero() or g.is_zero():
        other = g if f.is_zero() else f
        if not other.is_constant():
            raise ValueError("common zeros of a polynomial and zero form a curve")
        return out
    if f.is_constant() or g.is_constant():
        return out
    if not f.uses_x() and not g.uses_x():
        ys = cas.univariate_gcd(f.restrict_x(0), g.restrict_x(0))
        if len(ys) > 1:
            raise ValueError("polynomials share a factor")
        return out
    res = cas.resultant_x(f, g)
    if not res:
        raise ValueError("polynomials share a factor")
    if len(res) == 1:
        return out
    roots, leftovers = cas.univariate_roots(res)
    for deg, _ in leftovers:
        out.irrational.append(f"{deg} common zero(s) with y algebraic of degree {deg}")
    for y0, _ in roots:
        fx = f.restrict_y(y0)
        gx = g.restrict_y(y0)
        h = cas.univariate_gcd(fx, gx)
        if len(h) <= 1:
            continue
        xr, xl = cas.univariate_roots(h)
        for x0, _ in xr:
            out.points.append((x0, y0))
        for deg, _ in xl:
            out.irrational.append(f"{deg} common zero(s) on y = {y0} with x algebraic")
    out.points = sorted(set(out.points), key=_sort_key)
    return out


def line_roots(coeffs) -> Tuple[List[GaussRat], List[str]]:
    """Distinct Q(i) roots of a univariate polynomial plus notes on the rest."""
    if len(coeffs) <= 1:
        return [], []
    roots, leftovers = cas.univariate_roots(coeffs)
    notes = [f"{k} root(s) algebraic of degree {deg}" for deg, k in leftovers]
    return [r for r, _ in roots], notes
