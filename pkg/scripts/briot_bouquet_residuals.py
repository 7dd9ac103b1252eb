"""Residuals of the Briot-Bouquet solutions with the stated and the corrected Q.

For zeta = t^n the equation zeta'' = -(zeta')^2 Q(zeta) holds with
Q = (1 - n)/(n zeta); for zeta = P(t) it holds with Q = -S'/(2S) where
S = 4 zeta^3 - g2 zeta - g3.  The stated forms drop the factors 1/n and 1/2.
"""

import sys

from univalens.continuation.classical import briot_bouquet_checks


def main() -> int:
    for label, corrected in (("stated", False), ("corrected", True)):
        for name, r in briot_bouquet_checks(corrected).items():
            print(f"{label:<10} {name:<26} max residual {r.max_residual:.3e}  tol {r.tol:.0e}  "
                  f"{'pass' if r.passed else 'FAIL'}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
