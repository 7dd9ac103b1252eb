"""Classical fields with closed-form solutions used as numerical oracles."""

from __future__ import annotations

import cmath
from fractions import Fraction
from typing import Tuple

import numpy as np

from ..algebra import GaussRat, RationalFn2
from ..algebra.fields import RationalVF2
from ..algebra.parsing import parse_rational
from .verify import PolynomialField
from .weierstrass import Weierstrass

# ---------------------------------------------------------------------------
# the field on the E8 surface x^2 + y^3 + z^5 = 0

E8_COMPONENTS = ("15*x+3*y^2", "10*y-2*x", "6*z")


def e8_field() -> PolynomialField:
    return PolynomialField(E8_COMPONENTS, ("x", "y", "z"))


def e8_solution(wp: Weierstrass = None):
    """The parametrization ``(e^{15t} P'(s)/2, -e^{10t} P(s), e^{6t})`` with ``s = e^{5t}/5``."""
    wp = wp or Weierstrass(0, 4)

    def phi(t: complex) -> Tuple[complex, complex, complex]:
        s = cmath.exp(5 * t) / 5
        p, dp = wp.both(s)
        return (0.5 * cmath.exp(15 * t) * dp, -cmath.exp(10 * t) * p, cmath.exp(6 * t))

    return phi


def e8_surface_residual(state) -> float:
    x, y, z = state
    return abs(x * x + y ** 3 + z ** 5) / max(1.0, abs(x) ** 2, abs(y) ** 3, abs(z) ** 5)


# ---------------------------------------------------------------------------
# Briot–Bouquet fields  eta d/dzeta - Q(zeta) eta^2 d/deta


def briot_bouquet_field(q) -> RationalVF2:
    """The field in coordinates ``(x, y) = (zeta, eta)``; ``q`` is a rational function of ``x``."""
    if isinstance(q, str):
        q = parse_rational(q.replace("zeta", "x"), ("x", "y"))
    q = RationalFn2.coerce(q)
    eta = RationalFn2.coerce(parse_rational("y", ("x", "y")))
    return RationalVF2(eta, -(q * eta * eta))


def q_power_stated(n: int) -> RationalFn2:
    """``(1 - n)/zeta`` as written in the classical example."""
    return parse_rational(f"({1 - n})/x", ("x", "y"))


def q_power_corrected(n: int) -> RationalFn2:
    """``(1 - n)/(n zeta)``, the coefficient for which ``zeta = t^n`` is a solution."""
    return parse_rational(f"({1 - n})/({n}*x)", ("x", "y"))


def _cubic(g2, g3) -> RationalFn2:
    g2, g3 = GaussRat.coerce(g2), GaussRat.coerce(g3)
    return parse_rational(f"4*x^3-({g2})*x-({g3})", ("x", "y"))


def q_weierstrass_stated(g2, g3) -> RationalFn2:
    """``-S'/S`` for ``S = 4 zeta^3 - g2 zeta - g3``."""
    s = _cubic(g2, g3)
    return -(s.diff_x() / s)


def q_weierstrass_corrected(g2, g3) -> RationalFn2:
    """``-S'/(2S)``, the coefficient for which the Weierstrass function is a solution."""
    s = _cubic(g2, g3)
    return -(s.diff_x() / (s * 2))


def power_solution(n: int):
    """``(zeta, eta) = (t^n, n t^(n-1))``."""
    return lambda t: (t ** n, n * t ** (n - 1))


def weierstrass_solution(g2, g3):
    """``(zeta, eta) = (P(t), P'(t))``."""
    wp = Weierstrass(complex(GaussRat.coerce(g2)), complex(GaussRat.coerce(g3)))
    return lambda t: wp.both(t)


# ---------------------------------------------------------------------------
# sample times and the Briot–Bouquet checks

BB_POWERS = (2, 3, 5)
BB_INVARIANTS = ((4, 0), (0, 4))


def e8_sample_times(n: int = 20):
    """``n`` times in the rectangle ``Re t in [-0.6, 0.3]``, ``Im t in [-0.6, 0.6]`` (deterministic)."""
    rows = 4
    cols = (n + rows - 1) // rows
    out = []
    for i in range(rows):
        for j in range(cols):
            if len(out) < n:
                re = -0.6 + 0.9 * (j + 0.5) / cols
                im = -0.6 + 1.2 * (i + 0.5) / rows
                out.append(complex(re, im))
    return out


def power_sample_times(n: int = 12):
    """Times on a circle of radius 0.8 around 0, shifted off the real axis."""
    return [0.8 * cmath.exp(1j * (2 * cmath.pi * k / n + 0.3)) for k in range(n)]


def weierstrass_sample_times(g2, g3, n: int = 12):
    """Times inside the fundamental parallelogram, kept away from the lattice poles."""
    w1, w2 = Weierstrass(complex(GaussRat.coerce(g2)), complex(GaussRat.coerce(g3))).periods
    out = []
    for k in range(n):
        a = 0.15 + 0.7 * ((k * 0.618034) % 1.0)
        b = 0.15 + 0.7 * ((k * 0.381966 + 0.2) % 1.0)
        out.append(a * w1 + b * w2)
    return out


def briot_bouquet_checks(corrected: bool = False, power_tol: float = 1e-10, wp_tol: float = 1e-8) -> dict:
    """Residual reports for ``zeta = t^n`` and ``zeta = P(t)`` against the chosen coefficients.

    ``corrected=False`` uses the coefficients exactly as classically written;
    ``corrected=True`` uses the coefficients derived from the solutions.
    """
    from .verify import verify_solution

    out = {}
    for n in BB_POWERS:
        q = q_power_corrected(n) if corrected else q_power_stated(n)
        out[f"power n={n}"] = verify_solution(power_solution(n), briot_bouquet_field(q), power_sample_times(),
                                              power_tol)
    for g2, g3 in BB_INVARIANTS:
        q = q_weierstrass_corrected(g2, g3) if corrected else q_weierstrass_stated(g2, g3)
        out[f"weierstrass g2={g2} g3={g3}"] = verify_solution(weierstrass_solution(g2, g3), briot_bouquet_field(q),
                                                              weierstrass_sample_times(g2, g3), wp_tol)
    return out
