"""Command line entry point: ``hconvex verify|search|beta|catalog``."""
from __future__ import annotations

import argparse
import json
import logging
import sys

from . import hclass as hc
from . import harness
from . import opineq as op
from .errors import ConfigError, HConvexError
from .reports import to_jsonable

EXIT_OK, EXIT_VIOLATION, EXIT_CONFIG = 0, 1, 2


def _interval(text: str) -> tuple:
    try:
        m, M = (float(v) for v in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected m,M but got {text!r}") from exc
    return m, M


def _names(values) -> tuple:
    out = []
    for v in values:
        out.extend(p for p in v.split(",") if p)
    return tuple(out)


def _print(obj):
    print(json.dumps(to_jsonable(obj), indent=2, sort_keys=True))


def cmd_verify(args) -> int:
    cfg = harness.SuiteConfig(
        seed=args.seed, trials=args.trials, dims=tuple(args.dim) if args.dim else
        harness.DEFAULT_DIMS, interval=args.interval, tol_rel=args.tol,
        suites=_names(args.suite) if args.suite else harness.SUITES,
        catalog_filter=_names(args.filter or ()))
    report = harness.run_suite(cfg, _names(args.check) if args.check else None)
    path = report.write(args.report or harness.default_report_path())
    summary = report.summary()
    summary["report"] = path
    _print(summary)
    return report.exit_code


def cmd_search(args) -> int:
    found = harness.search_counterexample(args.target, args.f, args.h, args.budget, args.seed,
                                          dim=args.dim, interval=args.interval, tol_rel=args.tol)
    if found is None:
        _print({"found": False, "target": args.target, "f": args.f, "h": args.h,
                "budget": args.budget})
        return EXIT_OK
    _print(dict(found.to_dict(), found=True))
    return EXIT_VIOLATION


def cmd_beta(args) -> int:
    f, g, h = hc.get_f(args.f), hc.get_f(args.g), hc.get_h(args.h)
    m, M = args.interval
    consts = op.beta_compute(f, g, h, args.alpha, m, M)
    out = consts.to_dict()
    if args.g == args.f and args.alpha > 0 and f.derivative is not None:
        try:
            out["t0"] = op.t0_compute(f, h, args.alpha, m, M)
        except ValueError as exc:
            out["t0_unavailable"] = str(exc)
    _print(out)
    return EXIT_OK


def cmd_catalog(args) -> int:
    names = hc.catalog_names()
    names["checks"] = sorted(harness.CHECKS)
    _print(names)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hconvex", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run seeded verification suites")
    v.add_argument("--suite", nargs="+", help=f"subset of {','.join(harness.SUITES)}")
    v.add_argument("--check", nargs="+", help="restrict to these check ids")
    v.add_argument("--trials", type=int, default=10)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--dim", type=int, nargs="+")
    v.add_argument("--interval", type=_interval, default=(0.5, 2.0))
    v.add_argument("--tol", type=float, default=1e-9)
    v.add_argument("--filter", nargs="+", help="catalog names to keep")
    v.add_argument("--report", help=f"output path (default: ${harness.REPORT_DIR_ENV} or .)")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", help="look for a counterexample")
    s.add_argument("--target", required=True)
    s.add_argument("--f", required=True)
    s.add_argument("--h", required=True)
    s.add_argument("--budget", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--dim", type=int, default=2)
    s.add_argument("--interval", type=_interval)
    s.add_argument("--tol", type=float, default=1e-9)
    s.set_defaults(func=cmd_search)

    b = sub.add_parser("beta", help="complementary Jensen constant")
    b.add_argument("--f", required=True)
    b.add_argument("--g", required=True)
    b.add_argument("--h", required=True)
    b.add_argument("--alpha", type=float, required=True)
    b.add_argument("--interval", type=_interval, required=True)
    b.set_defaults(func=cmd_beta)

    c = sub.add_parser("catalog", help="catalog operations")
    c.add_argument("action", choices=["list"])
    c.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ConfigError, KeyError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except HConvexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
