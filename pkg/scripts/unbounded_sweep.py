"""Santalo products of the two-ellipse curves as eps shrinks and m grows.

Every value should exceed 0.9 pi^2 / eps^2 and increase as eps decreases.
"""

import argparse
import math

from woundpoly.search import sweep_increasing, unboundedness_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--eps", type=float, nargs="+", default=[0.5, 0.2, 0.1, 0.05])
    ap.add_argument("--k", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--m", type=int, nargs="+", default=[64, 256, 1024])
    args = ap.parse_args()

    print("k,m,eps,value,floor,value*eps^2/pi^2")
    for k in args.k:
        for m in args.m:
            rows = unboundedness_sweep(k, args.eps, m)
            for r in rows:
                print(f"{k},{m},{r.eps},{r.value:.6f},{r.floor:.6f},{r.value * r.eps**2 / math.pi**2:.4f}")
            if not (all(r.ok for r in rows) and sweep_increasing(rows)):
                print(f"# k={k} m={m}: floor or monotonicity failed")


if __name__ == "__main__":
    main()
