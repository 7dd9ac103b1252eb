"""Exact arithmetic over the Gaussian rationals.

Re-exports the coefficient field, polynomials, rational functions and the
vector-field layer used by every other module.
"""

from .gaussrat import GaussRat, ONE, ZERO, I
from .bipoly import BiPoly, X, Y
from .rational import RationalFn2
from .parsing import ParseError, parse_pair, parse_point, parse_poly, parse_rational, parse_number
from .fields import (
    DivisorComponent,
    EigenClass,
    EigenKind,
    NotHolomorphicError,
    RationalVF2,
    Saturation,
    eigen_ratio_class,
    eigenvalues_exact,
    eigenvector,
    linear_part,
    order_along,
)

__all__ = [
    "GaussRat", "ONE", "ZERO", "I", "BiPoly", "X", "Y", "RationalFn2", "ParseError",
    "parse_pair", "parse_point", "parse_poly", "parse_rational", "parse_number",
    "DivisorComponent", "EigenClass", "EigenKind", "NotHolomorphicError", "RationalVF2",
    "Saturation", "eigen_ratio_class", "eigenvalues_exact", "eigenvector", "linear_part",
    "order_along",
]
