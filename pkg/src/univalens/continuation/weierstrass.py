"""Weierstrass elliptic functions from the invariants ``g2, g3``.

Values come from the Laurent series at a small argument and repeated
duplication on the curve ``Y^2 = 4X^3 - g2 X - g3``.  Arguments are first
reduced into the fundamental parallelogram of a reduced period basis.  Period
candidates are produced by the arithmetic-geometric mean and are accepted only
after the function is seen to be invariant under them.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

SERIES_FRACTION = 0.25
MAX_TERMS = 200


class WeierstrassPole(ValueError):
    """The argument is a lattice point."""


def laurent_coefficients(g2: complex, g3: complex, n: int) -> List[complex]:
    """Coefficients ``c_k`` (``k >= 2``) with ``P(z) = z^-2 + sum_k c_k z^(2k-2)``."""
    c = [0j, 0j, g2 / 20, g3 / 28]
    for k in range(4, n + 1):
        s = sum(c[m] * c[k - m] for m in range(2, k - 1))
        c.append(3 * s / ((2 * k + 1) * (k - 3)))
    return c[: n + 1]


def _agm(a: complex, b: complex, tol: float = 1e-16) -> complex:
    for _ in range(100):
        a1 = (a + b) / 2
        r = cmath.sqrt(a * b)
        b1 = r if abs(a1 - r) <= abs(a1 + r) else -r
        a, b = a1, b1
        if abs(a - b) <= tol * abs(a):
            break
    return (a + b) / 2


def _lattice_reduce(w1: complex, w2: complex) -> Tuple[complex, complex]:
    """Lagrange–Gauss reduction of a lattice basis."""
    if abs(w1) > abs(w2):
        w1, w2 = w2, w1
    for _ in range(100):
        mu = round(((w2 * w1.conjugate()).real) / abs(w1) ** 2)
        w2 = w2 - mu * w1
        if abs(w2) >= abs(w1):
            break
        w1, w2 = w2, w1
    if (w2 / w1).imag < 0:
        w2 = -w2
    return w1, w2


@dataclass
class SeriesValue:
    p: complex
    dp: complex
    truncation: float


class Weierstrass:
    """The function ``P`` with ``P'^2 = 4 P^3 - g2 P - g3``."""

    def __init__(self, g2: complex, g3: complex):
        self.g2, self.g3 = complex(g2), complex(g3)
        disc = self.g2 ** 3 - 27 * self.g3 ** 2
        if abs(disc) < 1e-14 * (1 + abs(self.g2) ** 3 + abs(self.g3) ** 2):
            raise ValueError("degenerate invariants (zero discriminant)")
        self.coeffs = laurent_coefficients(self.g2, self.g3, MAX_TERMS)
        self.roots = tuple(complex(r) for r in np.roots([4, 0, -self.g2, -self.g3]))
        # the nearest pole of the series lies at a distance at least sqrt(3)/2 |w1|; bootstrap
        # with a conservative radius from the coefficients, then refine with the periods
        self._radius = self._coefficient_radius()
        self.periods = self._find_periods()
        self._radius = min(abs(self.periods[0]), abs(self.periods[1]), abs(self.periods[1] - self.periods[0]),
                           abs(self.periods[1] + self.periods[0]))

    # series --------------------------------------------------------------

    def _coefficient_radius(self) -> float:
        vals = [abs(c) ** (1.0 / (2 * k - 2)) for k, c in enumerate(self.coeffs) if k >= 20 and c != 0]
        if not vals:  # pragma: no cover - g2 = g3 = 0 is excluded
            return 1.0
        return 1.0 / max(vals[-10:])

    def _series(self, u: complex) -> SeriesValue:
        if u == 0:
            raise WeierstrassPole("argument at a lattice point")
        u2 = u * u
        p, dp = 1 / u2, -2 / (u2 * u)
        power = 1.0 + 0j
        recent = [0.0, 0.0, 0.0]
        for k in range(2, MAX_TERMS + 1):
            power = power * u2  # u^(2k-2)
            term = self.coeffs[k] * power
            p += term
            dp += (2 * k - 2) * term / u
            recent = recent[1:] + [abs(term)]
            # with g2 = 0 or g3 = 0 only every second or third coefficient is nonzero
            if k > 6 and max(recent) <= 1e-18 * abs(p):
                break
        return SeriesValue(p, dp, 2 * max(recent))

    def _unreduced(self, z: complex) -> Tuple[complex, complex]:
        r = SERIES_FRACTION * self._radius
        n = 0
        u = complex(z)
        while abs(u) > r:
            u /= 2
            n += 1
        s = self._series(u)
        p, dp = s.p, s.dp
        for _ in range(n):
            if dp == 0:
                raise WeierstrassPole("argument at a lattice point")
            lam = (6 * p * p - self.g2 / 2) / dp
            p2 = lam * lam / 4 - 2 * p
            dp = -(lam * (p2 - p) + dp)
            p = p2
        return p, dp

    # periods -------------------------------------------------------------

    def _is_period(self, w: complex) -> bool:
        if abs(w) < 1e-8:
            return False
        probes = (0.1234 + 0.0567j, -0.0731 + 0.1109j)
        for z0 in probes:
            z0 = z0 * self._radius
            a, _ = self._unreduced(z0)
            b, _ = self._unreduced(z0 + w)
            if abs(a - b) > 1e-7 * (1 + abs(a)):
                return False
        return True

    def _find_periods(self) -> Tuple[complex, complex]:
        cands = []
        for i, j, k in itertools.permutations(range(3)):
            e = self.roots
            m = _agm(cmath.sqrt(e[i] - e[k]), cmath.sqrt(e[i] - e[j]))
            if m != 0:
                w = cmath.pi / m
                cands += [w, 1j * w]
        valid = []
        for w in cands:
            for v in (w, 2 * w):
                if self._is_period(v) and all(abs(v - u) > 1e-9 * abs(v) and abs(v + u) > 1e-9 * abs(v) for u in valid):
                    valid.append(v)
                    break
        basis = None
        for a, b in itertools.combinations(sorted(valid, key=abs), 2):
            if abs((b / a).imag) > 1e-6:
                basis = (a, b)
                break
        if basis is None:
            raise ArithmeticError("could not determine the period lattice")
        w1, w2 = _lattice_reduce(*basis)
        for _ in range(8):  # refine if a half-combination is also a period
            for h in (w1 / 2, w2 / 2, (w1 + w2) / 2):
                if self._is_period(h):
                    w1, w2 = _lattice_reduce(*((h, w2) if abs((h / w2).imag) > 1e-6 else (w1, h)))
                    break
            else:
                break
        return w1, w2

    # evaluation ----------------------------------------------------------

    def reduce(self, z: complex) -> complex:
        """Representative of ``z`` modulo the lattice, near the origin."""
        w1, w2 = self.periods
        m = np.linalg.solve(np.array([[w1.real, w2.real], [w1.imag, w2.imag]]), np.array([z.real, z.imag]))
        return complex(z) - round(m[0]) * w1 - round(m[1]) * w2

    def both(self, z: complex) -> Tuple[complex, complex]:
        u = self.reduce(complex(z))
        if abs(u) < 1e-300:
            raise WeierstrassPole("argument at a lattice point")
        return self._unreduced(u)

    def __call__(self, z: complex) -> complex:
        return self.both(z)[0]

    def derivative(self, z: complex) -> complex:
        return self.both(z)[1]

    def curve_residual(self, z: complex) -> float:
        """Relative defect of ``P'^2 = 4P^3 - g2 P - g3`` at ``z``."""
        p, dp = self.both(z)
        rhs = 4 * p ** 3 - self.g2 * p - self.g3
        return abs(dp * dp - rhs) / max(1.0, abs(rhs))
