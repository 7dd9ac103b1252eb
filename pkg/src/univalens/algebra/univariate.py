"""Dense univariate polynomials as ascending coefficient lists of GaussRat.

These helpers back residue computations on curves: the rational function
``num/den`` of one variable is handled through its two coefficient lists.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

from .gaussrat import GaussRat, ONE, ZERO

UPoly = List[GaussRat]


def trim(a: Sequence[GaussRat]) -> UPoly:
    out = [GaussRat.coerce(c) for c in a]
    while out and out[-1].is_zero():
        out.pop()
    return out


def degree(a: Sequence[GaussRat]) -> int:
    return len(trim(a)) - 1


def add(a: UPoly, b: UPoly) -> UPoly:
    n = max(len(a), len(b))
    return trim([(a[k] if k < len(a) else ZERO) + (b[k] if k < len(b) else ZERO) for k in range(n)])


def scale(a: UPoly, c) -> UPoly:
    c = GaussRat.coerce(c)
    return trim([v * c for v in a])


def sub(a: UPoly, b: UPoly) -> UPoly:
    return add(a, scale(b, -1))


def mul(a: UPoly, b: UPoly) -> UPoly:
    if not a or not b:
        return []
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u.is_zero():
            continue
        for j, v in enumerate(b):
            out[i + j] = out[i + j] + u * v
    return trim(out)


def divmod_poly(a: UPoly, b: UPoly) -> Tuple[UPoly, UPoly]:
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(trim(a))
    if len(rem) < len(b):
        return [], rem
    inv = b[-1].inverse()
    quo = [ZERO] * (len(rem) - len(b) + 1)
    for k in range(len(rem) - len(b), -1, -1):
        c = rem[k + len(b) - 1] * inv
        quo[k] = c
        if not c.is_zero():
            for j, v in enumerate(b):
                rem[k + j] = rem[k + j] - c * v
    return trim(quo), trim(rem[: len(b) - 1])


def evaluate(a: Sequence[GaussRat], z) -> GaussRat:
    z = GaussRat.coerce(z)
    total = ZERO
    for c in reversed(a):
        total = total * z + c
    return total


def evaluate_complex(a: Sequence[GaussRat], z: complex) -> complex:
    total = 0j
    for c in reversed(a):
        total = total * z + complex(c)
    return total


def derivative(a: UPoly) -> UPoly:
    return trim([a[k] * k for k in range(1, len(a))])


def taylor_shift(a: UPoly, z0) -> UPoly:
    """Coefficients of ``a(z0 + s)`` in ``s``."""
    z0 = GaussRat.coerce(z0)
    out = list(trim(a))
    n = len(out)
    for i in range(n):
        for k in range(n - 2, i - 1, -1):
            out[k] = out[k] + z0 * out[k + 1]
    return trim(out)


def series_div(a: UPoly, b: UPoly, n: int) -> UPoly:
    """First ``n`` power-series coefficients of ``a/b``; needs ``b[0] != 0``."""
    if not b or b[0].is_zero():
        raise ZeroDivisionError("series denominator vanishes at the origin")
    inv = b[0].inverse()
    out = []
    for k in range(n):
        s = a[k] if k < len(a) else ZERO
        for j in range(1, min(k, len(b) - 1) + 1):
            s = s - b[j] * out[k - j]
        out.append(s * inv)
    return out


def order_at(a: UPoly, z0) -> int:
    """Vanishing order of ``a`` at ``z0`` (``-1`` never; zero poly raises)."""
    s = taylor_shift(a, z0)
    if not s:
        raise ValueError("order of the zero polynomial")
    k = 0
    while s[k].is_zero():
        k += 1
    return k


def laurent_at(num: UPoly, den: UPoly, z0, n_terms: int) -> Tuple[int, UPoly]:
    """Laurent data ``(v, c)`` with ``num/den = s^v (c0 + c1 s + ...)`` at ``z0``."""
    ns = taylor_shift(num, z0)
    ds = taylor_shift(den, z0)
    if not ds:
        raise ZeroDivisionError("zero denominator")
    if not ns:
        return 0, []
    a = 0
    while ns[a].is_zero():
        a += 1
    b = 0
    while ds[b].is_zero():
        b += 1
    return a - b, series_div(ns[a:], ds[b:], n_terms)


def residue_at(num: UPoly, den: UPoly, z0) -> GaussRat:
    """Residue of ``num/den dz`` at the finite point ``z0``."""
    v, c = laurent_at(num, den, z0, 1)
    if not c or v >= 0:
        return ZERO
    _, c = laurent_at(num, den, z0, -v)
    return c[-v - 1]


def residue_at_infinity(num: UPoly, den: UPoly) -> GaussRat:
    """Residue of ``num/den dz`` at infinity (minus the sum of finite residues)."""
    num, den = trim(num), trim(den)
    if not num:
        return ZERO
    _, rem = divmod_poly(num, den)
    if not rem or len(rem) != len(den) - 1:
        return ZERO
    return -(rem[-1] / den[-1])


def from_ints(*coeffs) -> UPoly:
    return trim([GaussRat.coerce(c) for c in coeffs])


def monomial(k: int, c=ONE) -> UPoly:
    return trim([ZERO] * k + [GaussRat.coerce(c)])
