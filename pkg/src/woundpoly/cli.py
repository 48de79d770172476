"""Command-line front end.

Curves travel between subcommands as JSON on stdin/stdout, e.g.::

    woundpoly cnk --n 5 --k 2 | woundpoly volprod

Exit codes: 0 success, 1 validation error or failed check, 2 numerical
non-convergence, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import bounds, io, search
from .curve import area, construct_cnk, guggenheimer_example
from .errors import CurveError, NoConvergence
from .polarity import polar, volume_product
from .santalo import kernel, santalo_point, santalo_product
from .svg import render

EXIT_OK, EXIT_INVALID, EXIT_NUMERIC, EXIT_USAGE = 0, 1, 2, 64
SEED_ENV = "WOUNDPOLY_SEED"


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _default_seed() -> int:
    v = os.environ.get(SEED_ENV)
    try:
        return int(v) if v is not None else 0
    except ValueError:
        return 0


def _fmt(x: float, digits: int) -> str:
    return f"{x:.{digits}g}"


def _read_curve(args):
    if args.input and args.input != "-":
        with open(args.input) as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    return io.loads_curve(text, allow_flat=getattr(args, "allow_flat", False))


def _write(args, text: str):
    out = getattr(args, "out", None)
    if out and out != "-":
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


# --- handlers ---------------------------------------------------------------


def cmd_cnk(args):
    _write(args, io.dumps_curve(construct_cnk(args.n, args.k)))


def cmd_example(args):
    _write(args, io.dumps_curve(guggenheimer_example(args.k, args.eps, args.m)))


def cmd_area(args):
    print(_fmt(area(_read_curve(args)), args.digits))


def cmd_polar(args):
    _write(args, io.dumps_curve(polar(_read_curve(args))))


def cmd_volprod(args):
    print(_fmt(volume_product(_read_curve(args)), args.digits))


def cmd_kernel(args):
    K = kernel(_read_curve(args))
    _write(args, json.dumps({"vertices": K.vertices.tolist(), "area": K.area()}))


def cmd_santalo(args):
    C = _read_curve(args)
    r = santalo_point(C, args.tol)
    _write(args, json.dumps({
        "point": r.point.tolist(),
        "value": r.value,
        "gradient_norm": r.gradient_norm,
        "iterations": r.iterations,
        "product": area(C) * r.value,
    }))


def cmd_bound(args):
    d = args.digits
    if args.which == "prop10":
        _need(args, "n", "k")
        print(_fmt(bounds.prop10_bound(args.n, args.k), d))
    elif args.which == "remark7":
        _need(args, "n", "k")
        print(_fmt(bounds.cnk_product(args.n, args.k), d))
    elif args.which == "prop12":
        _need(args, "k")
        c = bounds.prop12_constants()
        print(f"c0={_fmt(c.c0, d)} c0_deg={_fmt(c.c0_degrees, d)} "
              f"coefficient={_fmt(c.coefficient, d)} bound={_fmt(bounds.prop12_bound(args.k), d)}")
    else:
        _need(args, "k")
        r = bounds.remark13_compare(args.k)
        print(f"prism={_fmt(r.prism, d)} simplex={_fmt(r.simplex, d)} smaller={r.smaller}")


def _curve_or_cnk(args):
    """``C_(n,k)`` when both ``--n`` and ``--k`` are given, otherwise the input curve."""
    if args.input is None and args.n is not None and args.k is not None:
        return construct_cnk(args.n, args.k)
    return _read_curve(args)


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.which} requires {', '.join(missing)}")


def cmd_check(args):
    d = args.digits
    if args.which == "lemma11":
        r = bounds.lemma11_check(args.grid)
        print(f"inv_one_minus_cos min_second_difference={_fmt(r.min_second_difference_inv_cos, d)}")
        print(f"t_over_sin min_second_difference={_fmt(r.min_second_difference_t_sin, d)}")
        print("PASS" if r.passed else "FAIL")
        return EXIT_OK if r.passed else EXIT_INVALID
    if args.which == "criticality":
        C = _curve_or_cnk(args)
        res = search.criticality_residual(C, args.h)
        rel = res / santalo_product(C)
        ok = rel <= args.threshold
        print(f"residual={_fmt(res, d)} relative={_fmt(rel, d)} {'PASS' if ok else 'FAIL'}")
        return EXIT_OK if ok else EXIT_INVALID
    if args.which == "prop10-trials":
        reports = [
            bounds.prop10_trials(n, k, args.trials, seed=[args.seed, n, k])
            for k in range(args.k_min, args.k_max + 1)
            for n in range(2 * k + 1, 4 * k + 1)
        ]
    else:
        reports = [
            bounds.prop12_trials(k, args.trials, seed=[args.seed, k])
            for k in range(args.k_min, args.k_max + 1)
        ]
    _write(args, io.reports_to_csv(reports, d))
    return EXIT_OK if all(r.gap >= -1e-9 for r in reports) else EXIT_INVALID


def cmd_search(args):
    C = _curve_or_cnk(args)
    config = search.SearchConfig(
        mode=args.mode, perturbation=args.perturbation, restarts=args.restarts,
        max_iter=args.max_iter, initial_step=args.step, seed=args.seed,
    )
    traces = search.restart_search(C, config)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(io.traces_to_json(config, traces, C))
    _write(args, io.traces_to_csv(traces, args.digits))


def cmd_unbounded(args):
    rows = search.unboundedness_sweep(args.k, args.eps, args.m)
    d = args.digits
    lines = ["eps,m,value,floor,ok"]
    lines += [f"{r.eps},{r.m},{_fmt(r.value, d)},{_fmt(r.floor, d)},{r.ok}" for r in rows]
    _write(args, "\n".join(lines) + "\n")
    ok = all(r.ok for r in rows) and search.sweep_increasing(rows)
    return EXIT_OK if ok else EXIT_INVALID


def cmd_plot(args):
    C = _read_curve(args)
    _write(args, render(C, show_polar=not args.no_polar, show_kernel=not args.no_kernel))


# --- parser -----------------------------------------------------------------


def build_parser() -> Parser:
    common = Parser(add_help=False)
    common.add_argument("--digits", type=int, default=12, help="significant digits (default 12)")
    curve_in = Parser(add_help=False)
    curve_in.add_argument("--in", dest="input", help="curve JSON file (default: stdin)")
    curve_in.add_argument("--allow-flat", action="store_true", help="accept collinear vertices")
    out = Parser(add_help=False)
    out.add_argument("--out", help="output file (default: stdout)")
    seeded = Parser(add_help=False)
    seeded.add_argument("--seed", type=int, default=_default_seed(),
                        help=f"random seed (default: ${SEED_ENV} or 0)")

    p = Parser(prog="woundpoly", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("cnk", parents=[common, out], help="regular star polygon C_(n,k)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_cnk)

    s = sub.add_parser("example", parents=[common, out], help="two-ellipse unbounded example")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--eps", type=float, required=True)
    s.add_argument("--m", type=int, default=256)
    s.set_defaults(func=cmd_example)

    for name, func, extra in (
        ("area", cmd_area, []), ("volprod", cmd_volprod, []),
        ("polar", cmd_polar, [out]), ("kernel", cmd_kernel, [out]),
    ):
        s = sub.add_parser(name, parents=[common, curve_in, *extra])
        s.set_defaults(func=func)

    s = sub.add_parser("santalo", parents=[common, curve_in, out], help="Santalo point")
    s.add_argument("--tol", type=float, default=None)
    s.set_defaults(func=cmd_santalo)

    s = sub.add_parser("bound", parents=[common], help="closed-form bounds")
    s.add_argument("which", choices=["prop10", "prop12", "remark7", "remark13"])
    s.add_argument("--n", type=int)
    s.add_argument("--k", type=int)
    s.set_defaults(func=cmd_bound)

    s = sub.add_parser("check", parents=[common, curve_in, out, seeded], help="numerical checks")
    s.add_argument("which", choices=["lemma11", "criticality", "prop10-trials", "prop12-trials"])
    s.add_argument("--n", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--grid", type=int, default=1000)
    s.add_argument("--h", type=float, default=1e-5)
    s.add_argument("--threshold", type=float, default=1e-5)
    s.add_argument("--trials", type=int, default=10_000)
    s.add_argument("--k-min", type=int, default=2)
    s.add_argument("--k-max", type=int, default=4)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("search", parents=[common, curve_in, out, seeded], help="local search")
    s.add_argument("--n", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--mode", choices=[m.value for m in search.Mode], default="General")
    s.add_argument("--restarts", type=int, default=10)
    s.add_argument("--perturbation", type=float, default=0.05)
    s.add_argument("--step", type=float, default=0.02)
    s.add_argument("--max-iter", type=int, default=4000)
    s.add_argument("--json", help="write the full trace JSON here")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("unbounded", parents=[common, out], help="two-ellipse sweep")
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--eps", type=float, nargs="+", default=[0.5, 0.2, 0.1])
    s.add_argument("--m", type=int, default=256)
    s.set_defaults(func=cmd_unbounded)

    s = sub.add_parser("plot", parents=[common, curve_in, out], help="SVG figure")
    s.add_argument("--no-polar", action="store_true")
    s.add_argument("--no-kernel", action="store_true")
    s.set_defaults(func=cmd_plot)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        rc = args.func(args)
    except UsageError as exc:
        print(f"woundpoly: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CurveError as exc:
        print(f"woundpoly: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NoConvergence as exc:
        print(f"woundpoly: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"woundpoly: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK if rc is None else rc


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
