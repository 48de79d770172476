"""Tables for the unit-circle bound and the prism/simplex comparison.

Prints the ratio of the k^2 bound to the C_(2k+1,k) product for a range
of k (it creeps up to coefficient/4), and the prism and simplex values.
"""

import argparse

from woundpoly.bounds import cnk_product, prop12_bound, prop12_constants, remark13_compare


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, nargs="+", default=[2, 3, 4, 5, 10, 20, 50, 100, 1000, 10000])
    args = ap.parse_args()

    c = prop12_constants()
    print(f"c0 = {c.c0:.12g} rad = {c.c0_degrees:.10g} deg, coefficient = {c.coefficient:.12g}, "
          f"coefficient/4 = {c.coefficient / 4:.8f}")
    print("k,bound,cnk_product(2k+1,k),ratio")
    for k in args.k:
        b, v = prop12_bound(k), cnk_product(2 * k + 1, k)
        print(f"{k},{b:.8g},{v:.8g},{b / v:.6f}")
    print("k,prism,simplex,smaller")
    for k in range(2, 11):
        r = remark13_compare(k)
        print(f"{k},{r.prism:.6f},{r.simplex:.6f},{r.smaller}")


if __name__ == "__main__":
    main()
