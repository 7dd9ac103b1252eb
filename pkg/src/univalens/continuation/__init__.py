"""Numerical continuation of solutions along paths in the time plane."""

from .determinations import (DeterminationCount, LeafSpec, count_determinations, example4_count,
                             example4_field, example4_generator, example4_leaf, half_lattice_points,
                             quotient_distance)
from .engine import ContinuationResult, continue_solution, integrate_path
from .field import NumericField
from .integrator import Outcome
from .paths import PathKind, PathSpec, loads_paths
from .verify import PolynomialField, VerificationReport, cauchy_derivative, verify_solution
from .weierstrass import Weierstrass, WeierstrassPole

__all__ = [
    "ContinuationResult", "DeterminationCount", "LeafSpec", "NumericField", "Outcome", "PathKind",
    "PathSpec", "PolynomialField", "VerificationReport", "Weierstrass", "WeierstrassPole",
    "cauchy_derivative", "continue_solution", "count_determinations", "example4_count", "example4_field",
    "example4_generator", "example4_leaf", "half_lattice_points", "integrate_path", "loads_paths",
    "quotient_distance", "verify_solution",
]
