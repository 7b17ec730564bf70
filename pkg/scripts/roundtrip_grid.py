"""Invert the transform of a catalog function on a polar grid and report errors.

Example: python scripts/roundtrip_grid.py --function exp:1,1,1,0 --radii 0.5,1.5,3
"""

import argparse
import math
import time

import numpy as np

from sectorexp.functions import from_id
from sectorexp.geometry import SectorPair
from sectorexp.inversion import default_plan, invert_2d_batch
from sectorexp.transform import ConcatenatedLaplace


def floats(text):
    return [float(x) for x in text.split(",")]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--function", default="exp:1,0,1,0")
    ap.add_argument("--alpha", type=float, default=math.pi / 4)
    ap.add_argument("--radii", type=floats, default=[0.5, 1.5, 3.0])
    ap.add_argument("--angles", type=floats, default=[-0.5, 0.0, 0.5],
                    help="fractions of alpha")
    args = ap.parse_args()

    sectors = SectorPair(args.alpha, args.alpha)
    f, env = from_id(args.function, sectors)
    t = ConcatenatedLaplace(f, env)
    pts = [(r1 * np.exp(1j * a1 * args.alpha), r2 * np.exp(1j * a2 * args.alpha))
           for r1 in args.radii for a1 in args.angles for r2 in args.radii for a2 in args.angles]
    z1 = np.array([p[0] for p in pts])
    z2 = np.array([p[1] for p in pts])

    start = time.perf_counter()
    got = invert_2d_batch(t, default_plan(t), z1, z2)
    elapsed = time.perf_counter() - start
    want = f.evaluator(z1, z2)
    err = np.abs(got - want) / np.maximum(1, np.abs(want))

    print("z1_re,z1_im,z2_re,z2_im,error")
    for a, b, e in zip(z1, z2, err):
        print(f"{a.real:.6f},{a.imag:.6f},{b.real:.6f},{b.imag:.6f},{e:.3e}")
    print(f"# {len(pts)} points, max error {err.max():.3e}, {elapsed:.1f} s")


if __name__ == "__main__":
    main()
