"""Monodromy of Wittich's Riccati equation around 0 and the cube roots of unity.

Prints each loop generator as a normalized 2x2 matrix together with its
distance to the identity in PSL(2, C), then the fixed-point census verdict.
"""

import argparse
import sys
import time

import numpy as np

from univalens.riccati import fixed_point_census, monodromy, wittich_equation, wittich_loops
from univalens.riccati.equation import WITTICH_BASE, WITTICH_RADIUS


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--base", type=float, default=WITTICH_BASE, help="base point of the lassos on the real axis")
    ap.add_argument("--radius", type=float, default=WITTICH_RADIUS, help="radius of each small circle")
    ap.add_argument("--tol", type=float, default=1e-11, help="integration tolerance")
    args = ap.parse_args(argv)
    t0 = time.perf_counter()
    rep = monodromy(wittich_equation(), wittich_loops(args.base, args.radius), args.tol)
    np.set_printoptions(precision=3, suppress=True)
    for i, m in enumerate(rep.maps):
        print(f"loop {i}: |M - I| = {m.distance_to_identity():.3e}")
        print(np.array(m.matrix))
    print(f"census: {fixed_point_census(rep).verdict.value}  ({time.perf_counter() - t0:.2f}s)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
