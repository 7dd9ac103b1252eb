"""Determination counts for the elliptic example on special and generic leaves.

The four leaves c in (1/2) Lambda carry one determination; any other leaf
carries two.  ``--scan N`` adds N random leaves to show the generic count.
"""

import argparse
import random
import sys

from univalens.continuation import example4_count, half_lattice_points
from univalens.corpus import GENERIC_LEAF


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--tau", type=complex, default=1j, help="second lattice generator (first is 1)")
    ap.add_argument("--scan", type=int, default=0, help="number of extra random leaves")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    lattice = (1, args.tau)
    rng = random.Random(args.seed)
    leaves = [(c, "special") for c in half_lattice_points(lattice)] + [(GENERIC_LEAF, "generic")]
    leaves += [(complex(rng.uniform(-1, 1), rng.uniform(-1, 1)), "random") for _ in range(args.scan)]
    for c, tag in leaves:
        r = example4_count(c, lattice)
        print(f"{tag:<8} c = {c:.4f}  determinations = {r.count}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
