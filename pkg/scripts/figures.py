"""SVG figures of a few stars, their polars and kernels, and a two-ellipse curve."""

import argparse
import pathlib

from woundpoly.curve import construct_cnk, guggenheimer_example
from woundpoly.svg import render


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=pathlib.Path, default=pathlib.Path("figures"))
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    for n, k in [(5, 2), (7, 2), (7, 3), (8, 3), (6, 2)]:
        (args.out / f"cnk_{n}_{k}.svg").write_text(render(construct_cnk(n, k)))
    C = guggenheimer_example(2, 0.3, 64)
    (args.out / "two_ellipse_k2_eps0.3.svg").write_text(render(C, show_polar=False))
    print(f"wrote figures to {args.out}")


if __name__ == "__main__":
    main()
