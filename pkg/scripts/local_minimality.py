"""Seeded restarts around C_(5,2) and C_(8,3), plus a descent from C_(7,2).

Writes one CSV per experiment and the full JSON traces to --out.
The C_(7,2) run is exploratory: it reports whether descent from a
non-minimal star ever drops below C_(5,2), without asserting anything.
"""

import argparse
import pathlib
import time

from woundpoly.bounds import cnk_product
from woundpoly.curve import construct_cnk
from woundpoly.io import traces_to_csv, traces_to_json
from woundpoly.search import Mode, SearchConfig, best_trace, local_search, restart_search


def run_restarts(n, k, mode, restarts, seed, out):
    start = construct_cnk(n, k)
    cfg = SearchConfig(mode=mode, restarts=restarts, seed=seed)
    t0 = time.perf_counter()
    traces = restart_search(start, cfg)
    dt = time.perf_counter() - t0
    stem = out / f"restarts_{n}_{k}_{mode.value}"
    stem.with_suffix(".csv").write_text(traces_to_csv(traces))
    stem.with_suffix(".json").write_text(traces_to_json(cfg, traces, start))
    best = best_trace(traces)
    gaps = [t.best_value - cnk_product(n, k) for t in traces]
    print(f"C({n},{k}) {mode.value}: {restarts} restarts in {dt:.1f}s, "
          f"best {best.best_value:.12g}, min gap {min(gaps):.3e}, max gap {max(gaps):.3e}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--restarts", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", type=pathlib.Path, default=pathlib.Path("results"))
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    run_restarts(5, 2, Mode.GENERAL, args.restarts, args.seed, args.out)
    run_restarts(8, 3, Mode.HALF_PERIOD_SYMMETRIC, args.restarts, args.seed, args.out)

    tr = local_search(construct_cnk(7, 2), SearchConfig(seed=args.seed))
    below = tr.best_value < cnk_product(5, 2)
    print(f"C(7,2) descent: start {tr.start_value:.12g} -> {tr.best_value:.12g} "
          f"after {tr.iterations} iterations; below C(5,2): {below}")


if __name__ == "__main__":
    main()
