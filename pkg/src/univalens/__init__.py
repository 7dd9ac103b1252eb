"""univalens: single-valued solutions of meromorphic vector fields on surfaces.

The package reduces singularities of planar meromorphic vector fields by
blow-ups, classifies the reduced local models, computes affine-structure
invariants on curves, continues solutions numerically in complex time and
studies Riccati monodromy.
"""

__version__ = "0.1.0"
