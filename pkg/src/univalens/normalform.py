"""Finite jets of saturated fields at a singular point.

Three computations live here, all exact and truncated at a declared jet
order:

* moving a singular point to the origin with the linear part diagonalized
  (when the eigenvectors are Gaussian-rational);
* the formal center manifold of a saddle-node and the order of the field
  restricted to it;
* the formal first integral ``x^n y^m (1 + ...)`` of a resonant saddle,
  whose existence is equivalent to formal orbital linearizability.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from .algebra.bipoly import BiPoly
from .algebra.gaussrat import GaussRat, ZERO

JET_ORDER_NORMAL_FORM = 12
JET_ORDER_TANGENCY = 8


def tmul(a: BiPoly, b: BiPoly, order: int) -> BiPoly:
    """Product truncated above total degree ``order``."""
    out: Dict[Tuple[int, int], GaussRat] = {}
    for (i1, j1), c1 in a.items():
        d1 = i1 + j1
        if d1 > order:
            continue
        for (i2, j2), c2 in b.items():
            if d1 + i2 + j2 > order:
                continue
            m = (i1 + i2, j1 + j2)
            out[m] = out.get(m, ZERO) + c1 * c2
    return BiPoly(out)


def linear_substitute(p: BiPoly, point, basis) -> BiPoly:
    """``p(point + basis @ (u, v))`` for a 2x2 ``basis`` given by columns."""
    (a, b), (c, d) = basis
    x0, y0 = point
    sx = BiPoly({(1, 0): a, (0, 1): b, (0, 0): x0})
    sy = BiPoly({(1, 0): c, (0, 1): d, (0, 0): y0})
    return p.substitute(sx, sy)


def field_in_basis(a: BiPoly, b: BiPoly, point, basis) -> Tuple[BiPoly, BiPoly]:
    """The saturated field ``(a, b)`` in coordinates ``(x, y) = point + V (u, v)``.

    ``basis`` is ``V`` written row-wise; its columns are the new axes.
    """
    (p, q), (r, s) = basis
    det = p * s - q * r
    if det.is_zero():
        raise ValueError("degenerate basis")
    A = linear_substitute(a, point, basis)
    B = linear_substitute(b, point, basis)
    inv = ((s / det, -q / det), (-r / det, p / det))
    return (A.scale(inv[0][0]) + B.scale(inv[0][1]), A.scale(inv[1][0]) + B.scale(inv[1][1]))


def is_linear_foliation(f1: BiPoly, f2: BiPoly, l1: GaussRat, l2: GaussRat) -> bool:
    """Whether ``(f1, f2)`` is a multiple of ``l1 u d/du + l2 v d/dv``."""
    u, v = BiPoly.x(), BiPoly.y()
    return (f1 * v.scale(l2) - f2 * u.scale(l1)).is_zero()


@dataclass(frozen=True)
class CenterManifold:
    """Formal weak separatrix ``v = h(u)`` and the restricted field ``u' = c u^kappa + ...``."""

    h: Tuple[GaussRat, ...]
    kappa: Optional[int]
    leading: GaussRat

    @property
    def k(self) -> Optional[int]:
        return None if self.kappa is None else self.kappa - 1


def center_manifold(f1: BiPoly, f2: BiPoly, lam: GaussRat, order: int = JET_ORDER_NORMAL_FORM) -> CenterManifold:
    """Formal center manifold of ``u' = f1``, ``v' = lam v + ...``.

    The linear part must be ``diag(0, lam)`` with ``lam != 0``.
    """
    h = [ZERO, ZERO]
    inv = lam.inverse()
    for k in range(2, order + 1):
        hp = BiPoly({(j, 0): c for j, c in enumerate(h)})
        f1h = _compose_graph(f1, hp, k)
        f2h = _compose_graph(f2, hp, k)
        dh = hp.diff_x()
        lhs = tmul(dh, f1h, k)
        # lam*h_k + [f2(u, h) - lam h]_k = [h' f1(u,h)]_k with h_k entering only through lam h_k
        rhs = lhs.coeff(k, 0) - (f2h.coeff(k, 0) - lam * (h[k] if k < len(h) else ZERO))
        h.append(rhs * inv)
        del rhs
    hp = BiPoly({(j, 0): c for j, c in enumerate(h)})
    restricted = _compose_graph(f1, hp, order)
    kappa, lead = None, ZERO
    for j in range(order + 1):
        c = restricted.coeff(j, 0)
        if not c.is_zero():
            kappa, lead = j, c
            break
    return CenterManifold(tuple(h), kappa, lead)


def _compose_graph(p: BiPoly, hp: BiPoly, order: int) -> BiPoly:
    """``p(u, h(u))`` truncated at degree ``order`` (result univariate in ``u``)."""
    out = BiPoly()
    powers = [BiPoly.const(1)]
    for _ in range(p.degree_y()):
        powers.append(tmul(powers[-1], hp, order))
    for (i, j), c in p.items():
        if i > order:
            continue
        term = powers[j].shift_monomial(i, 0).truncate(order).scale(c)
        out = out + term
    return out


def contact_order(curve_eq: BiPoly, h: Tuple[GaussRat, ...], order: int) -> Optional[int]:
    """Vanishing order of ``curve_eq(u, h(u))``; ``None`` beyond ``order``."""
    hp = BiPoly({(j, 0): c for j, c in enumerate(h)})
    g = _compose_graph(curve_eq, hp, order)
    for j in range(order + 1):
        if not g.coeff(j, 0).is_zero():
            return j
    return None


@dataclass(frozen=True)
class FirstIntegralJet:
    linearizable_to_order: bool
    obstruction_degree: Optional[int]
    order: int


def resonant_first_integral(f1: BiPoly, f2: BiPoly, n: int, m: int,
                            order: int = JET_ORDER_NORMAL_FORM) -> FirstIntegralJet:
    """Try to solve ``Y(H) = 0`` with ``H = u^n v^m + ...`` up to degree ``order``.

    The linear part of ``(f1, f2)`` must be ``diag(l1, l2)`` with
    ``n l1 + m l2 = 0``.  An unsolvable resonant coefficient is the formal
    obstruction to orbital linearization.
    """
    l1 = f1.coeff(1, 0)
    l2 = f2.coeff(0, 1)
    n1, n2 = f1 - BiPoly({(1, 0): l1}), f2 - BiPoly({(0, 1): l2})
    hterms: Dict[Tuple[int, int], GaussRat] = {(n, m): GaussRat(1)}
    base = n + m
    for d in range(base + 1, order + 1):
        H = BiPoly(hterms)
        # contribution of the nonlinear part to degree d
        rhs = (tmul(n1, H.diff_x(), d) + tmul(n2, H.diff_y(), d)).homogeneous_part(d)
        for (a, b), c in rhs.items():
            w = l1 * a + l2 * b
            if w.is_zero():
                return FirstIntegralJet(False, d, order)
            hterms[(a, b)] = hterms.get((a, b), ZERO) - c / w
    return FirstIntegralJet(True, None, order)
