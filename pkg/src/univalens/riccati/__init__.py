"""Riccati foliations: special fibers, flips, monodromy and fixed points."""

from .census import (CensusVerdict, FixedPointCensus, ForbidReport, exact_census, fixed_point_census,
                     forbid_check, kernel_elements)
from .equation import (LoopMonodromy, MonodromyError, MonodromyRep, RiccatiEq, loop_monodromy, monodromy,
                       wittich_equation, wittich_loops, wittich_solution)
from .fibers import (FiberClass, FiberFormError, FiberKind, classify_fiber, flip, flip_inverse, model_field,
                     numeric_local_monodromy)
from .mobius import (ExactFixedSet, ExactMobius, Mobius, chordal_distance, common_fixed_points_exact)

__all__ = [
    "CensusVerdict", "ExactFixedSet", "ExactMobius", "FiberClass", "FiberFormError", "FiberKind",
    "FixedPointCensus", "ForbidReport", "LoopMonodromy", "Mobius", "MonodromyError", "MonodromyRep",
    "RiccatiEq", "chordal_distance", "classify_fiber", "common_fixed_points_exact", "exact_census",
    "fixed_point_census", "flip", "flip_inverse", "forbid_check", "kernel_elements", "loop_monodromy",
    "model_field", "monodromy", "numeric_local_monodromy", "wittich_equation", "wittich_loops",
    "wittich_solution",
]
