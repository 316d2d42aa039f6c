"""Build and classify Theorem 2 families over a (q, m, v) grid.

    python scripts/sweep_theorem2.py --qmax 5 --draws 3 --seed 1
"""

import argparse
import time

import numpy as np

from seqcomp.constructions import Theorem2Params, build_zccs_theorem2
from seqcomp.correlation import classify


def draw_params(rng, q, m, v):
    units = [a for a in range(1, q) if np.gcd(a, q) == 1]
    pi = tuple(int(p) for p in rng.permutation(m - v) + 1)
    coeffs = tuple(tuple(int(c) for c in row) for row in rng.integers(0, q, size=(q - 1, m)))
    return Theorem2Params(q, m, v, int(rng.choice(units)), int(rng.choice(units)), pi, coeffs)


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--qmax", type=int, default=6)
    ap.add_argument("--mmax", type=int, default=3)
    ap.add_argument("--draws", type=int, default=2)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)

    print(f"{'q':>2} {'m':>2} {'v':>2} {'shape':>14} {'Z want':>7} {'Z got':>6} {'optimal':>8} {'time':>8}")
    for q in range(2, args.qmax + 1):
        for m in range(2, args.mmax + 1):
            for v in range(m):
                for _ in range(args.draws):
                    p = draw_params(rng, q, m, v)
                    t0 = time.perf_counter()
                    r = classify(build_zccs_theorem2(p, verify="never"))
                    dt = time.perf_counter() - t0
                    optimal = r.m == r.n * (r.length // p.zcz)
                    shape = f"({r.m},{r.n},{r.length})"
                    print(f"{q:>2} {m:>2} {v:>2} {shape:>14} {p.zcz:>7} {r.zcz_width:>6} "
                          f"{str(optimal):>8} {dt:>7.3f}s")


if __name__ == "__main__":
    main()
