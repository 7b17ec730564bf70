"""Acceptance threshold of the diagonal slope (nu, nu) for cos(sqrt(z1 z2)).

Scans theta1 = theta2 = phi and compares the bisected threshold with
|sin(phi)| / 2, the growth rate of |Im sqrt(z1 z2)| along the diagonal.
"""

import argparse
import math

import numpy as np

from sectorexp.functions import make_cos_sqrt
from sectorexp.geometry import SectorPair
from sectorexp.indicator import GrowthGrid, membership_threshold


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--alpha", type=float, default=math.pi / 3)
    ap.add_argument("--steps", type=int, default=9)
    ap.add_argument("--count", type=int, default=20, help="radii per direction")
    args = ap.parse_args()

    f = make_cos_sqrt(SectorPair(args.alpha, args.alpha))
    grid = GrowthGrid(count=args.count)
    print("phi,threshold,half_sin,difference")
    for phi in np.linspace(-args.alpha, args.alpha, args.steps):
        nu = membership_threshold(f, (phi, phi), grid)
        ref = 0.5 * abs(math.sin(phi))
        print(f"{phi:.6f},{nu:.5f},{ref:.5f},{nu - ref:+.5f}")


if __name__ == "__main__":
    main()
