"""Two looks at the strong-starlikeness radius.

1. Sharpness: how far beyond the computed radius the sector condition
   |arg zu'/u| < pi rho / 2 actually survives, sampled on circles.
2. Truncation: roots of the tail-free zero sum for growing N against the
   tail-corrected root, for g = sin z and rho = 1/2.

    python scripts/strong_study.py
    python scripts/strong_study.py --rho 0.3 --skip-truncation
"""
import argparse
import cmath
import math

import numpy as np

from mlradii import MLParams, radius_strong_starlike
from mlradii.radii import _bisect, strong_psi_truncated
from mlradii.verify import ComplexRatios

CASES = [
    ("sin z", MLParams(2, 2, 1), "g", True),
    ("z cos z", MLParams(2, 1, 1), "g", True),
    ("(3,1,1) g", MLParams(3, 1, 1), "g", False),
    ("(3,1,1) h", MLParams(3, 1, 1), "h", False),
    ("(3,1.5,2) f", MLParams(3, 1.5, 2), "f", False),
]
FACTORS = [0.999, 1.0, 1.001, 1.003, 1.01, 1.03, 1.1]


def max_arg(cr, r, grid=1440):
    th = 2 * np.pi * np.arange(grid) / grid
    return max(abs(cmath.phase(cr.starlike(r * cmath.exp(1j * t)))) for t in th)


def sharpness(rho):
    half = math.pi * rho / 2
    print(f"max |arg zu'/u| on |z| = f R, against pi rho/2 = {half:.6f}")
    print(f"{'case':<12} {'R':>18}  " + "  ".join(f"{f:>7}" for f in FACTORS) + "  first f outside")
    for name, p, norm, override in CASES:
        res = radius_strong_starlike(p, norm, rho, assume_real_zeros=override)
        cr = ComplexRatios(p, norm, need_convex=False)
        vals = [max_arg(cr, res.radius * f) for f in FACTORS]
        first = next((f for f, v in zip(FACTORS, vals) if v >= half), None)
        print(f"{name:<12} {res.radius:>18.12f}  " + "  ".join(f"{v:7.4f}" for v in vals)
              + f"  {first if first else '-'}")


def truncation(rho):
    exact = radius_strong_starlike(MLParams(2, 2, 1), "g", rho, assume_real_zeros=True).radius
    print(f"\ntail-free sums for sin z, rho = {rho}: tail-corrected root {exact!r}")
    print(f"{'N':>9} {'root':>20} {'root - exact':>14} {'N (root - exact)':>17}")
    for n in (10, 100, 1_000, 10_000, 100_000, 1_000_000):
        zeros = math.pi * np.arange(1, n + 1, dtype=float)
        root, _, _ = _bisect(lambda r: strong_psi_truncated(MLParams(2, 2, 1), "g", rho, r, zeros), 0.0,
                             math.pi, 1e-14, increasing=True)
        print(f"{n:>9} {root:>20.15f} {root - exact:>14.3e} {n * (root - exact):>17.6f}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--rho", type=float, default=0.5)
    ap.add_argument("--skip-truncation", action="store_true")
    args = ap.parse_args()
    sharpness(args.rho)
    if not args.skip_truncation:
        truncation(args.rho)


if __name__ == "__main__":
    main()
