"""Growth constants C(theta) for exp(z1 + z2) against measured membership.

For each theta on a grid, prints the convexity constants and whether
(C1 + eps, C2 + eps) is accepted for eps in {-0.05, 0, 0.05}.
"""

import argparse
import math

import numpy as np

from sectorexp.functions import make_exponential
from sectorexp.geometry import SectorPair
from sectorexp.indicator import convexity_bound, membership_test


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--alpha", type=float, default=math.pi / 4)
    ap.add_argument("--steps", type=int, default=7)
    args = ap.parse_args()

    sectors = SectorPair(args.alpha, args.alpha)
    f, env = make_exponential(1, 1, sectors)
    print("theta1,theta2,C1,C2,eps=-0.05,eps=0,eps=0.05")
    for th in np.linspace(-args.alpha, args.alpha, args.steps):
        theta = (float(th), 0.0)
        c1, c2 = convexity_bound((args.alpha, args.alpha), theta,
                                 (env.a1_plus, env.a2_plus), (env.a1_minus, env.a2_minus))
        verdicts = [membership_test(f, theta, (c1 + e, c2 + e)).accepted for e in (-0.05, 0.0, 0.05)]
        print(f"{th:.6f},0,{c1:.12f},{c2:.12f}," + ",".join(str(v).lower() for v in verdicts))


if __name__ == "__main__":
    main()
