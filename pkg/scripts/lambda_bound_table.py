"""Path integral of exp(-Re(omega z)) over the cut contour versus its closed-form bound.

The two agree because the chord lies on a level line of Re(omega e^{i theta});
the table shows how the constant in front of exp((C + delta)|z|)/|z| grows with |z|.
"""

import argparse
import math

from sectorexp.geometry import GammaContour, build_lambda
from sectorexp.inversion import lambda_constant, lambda_path_integral, lambda_tail_bound


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--alpha", type=float, default=math.pi / 4)
    ap.add_argument("--delta", type=float, default=0.1)
    ap.add_argument("--vertex", type=float, default=-2 * math.sqrt(2))
    args = ap.parse_args()

    base = GammaContour(args.vertex, args.alpha, 1.0)
    print("theta,modulus,chord,constant,direct,bound,ratio")
    for theta in (-math.pi / 8, 0.0, math.pi / 8):
        lam = build_lambda(base, theta, math.cos(theta), args.delta)
        for modulus in (0.5, 1, 2, 5, 10, 20):
            z = modulus * complex(math.cos(theta), math.sin(theta))
            direct = lambda_path_integral(lam, z)
            bound = lambda_tail_bound(lam, z)
            print(f"{theta:.6f},{modulus},{lam.chord_length:.6f},{lambda_constant(lam, modulus):.6f},"
                  f"{direct:.10e},{bound:.10e},{direct / bound:.12f}")


if __name__ == "__main__":
    main()
