"""Command-line entry point.

Exit codes: 0 success, 1 verification failure or nothing found,
2 usage/parse/range error, 3 search guard exceeded.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .hypergraph import HypergraphError, ParseError, parse, serialize
from .matching import matching_number
from .norms import norm_direct
from .search import (
    OBJECTIVES,
    GuardExceeded,
    brute_force_max,
    find_shift_counterexample,
    reports_to_csv,
)
from .shifting import ShiftPair, shift, shift_to_stable
from .suites import SUITES
from .sunflower import count_sunflowers

DEFAULT_SEED = 7
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


def _load(path: str):
    if path == "-":
        return parse(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def cmd_count(args) -> int:
    H = _load(args.file)
    print(count_sunflowers(H, args.kernel, args.petals))
    return EXIT_OK


def cmd_norm(args) -> int:
    H = _load(args.file)
    kernel = H.r - 1 if args.kernel is None else args.kernel
    print(norm_direct(H, kernel, args.power))
    return EXIT_OK


def cmd_matching(args) -> int:
    H = _load(args.file)
    res = matching_number(H)
    print(res.size)
    for e in res.witness:
        print("# " + " ".join(map(str, e)))
    return EXIT_OK


def cmd_shift(args) -> int:
    H = _load(args.file)
    sys.stdout.write(serialize(shift(H, ShiftPair(*args.pair))))
    return EXIT_OK


def cmd_stabilize(args) -> int:
    H = _load(args.file)
    final, trace = shift_to_stable(H)
    print(f"# steps: {len(trace)}")
    for p, moved in trace.steps:
        print(f"# shift {p.i} {p.j} moved {moved}")
    sys.stdout.write(serialize(final))
    return EXIT_OK


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    failed = 0
    if args.format == "csv":
        print("suite,seed,trials,passed,failed")
    for name in names:
        res = SUITES[name](args.seed, args.trials)
        failed += res.failed
        if args.format == "csv":
            print(f"{name},{args.seed},{args.trials},{res.passed},{res.failed}")
        else:
            status = "PASS" if res.ok else "FAIL"
            print(f"{status} {name}: {res.passed} passed, {res.failed} failed (seed {args.seed})")
            for detail in res.failures:
                print(f"  counterexample: {detail}")
    return EXIT_OK if failed == 0 else EXIT_FAIL


def cmd_search(args) -> int:
    rep = brute_force_max(
        args.vertices, args.uniformity, args.forbid_matching, args.petals, args.objective,
        restrict_shifted=args.shifted_only, jobs=args.jobs,
    )
    if args.format == "csv":
        sys.stdout.write(reports_to_csv([rep]))
    elif args.format == "text":
        sys.stdout.write(rep.to_text())
    else:
        print(f"objective      {rep.objective}" + (f" (k={rep.k})" if rep.k else ""))
        print(f"n r s          {rep.n} {rep.r} {rep.s}")
        print(f"max value      {rep.max_value}")
        print(f"witnesses      {rep.witness_count}")
        print(f"explored       {rep.explored}")
        print(f"shifted only   {str(rep.restricted_to_shifted).lower()}")
        for idx, W in enumerate(rep.extremal_witnesses, 1):
            print(f"witness {idx}: " + " ".join("{" + ",".join(map(str, e)) + "}" for e in W.edges))
    return EXIT_OK


def cmd_counterexample(args) -> int:
    rep = find_shift_counterexample(
        args.uniformity, args.max_vertices, args.target, seed=args.seed, trials=args.trials
    )
    if rep is None:
        print(f"not found: {args.target} (r={args.uniformity}, n<={args.max_vertices}, "
              f"seed {args.seed})")
        return EXIT_FAIL
    sys.stdout.write(rep.to_text())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hypershift", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count sunflower copies S_{t,k}^r")
    p.add_argument("file", help="hypergraph file, '-' for stdin")
    p.add_argument("--kernel", type=int, required=True, help="kernel size t")
    p.add_argument("--petals", type=int, required=True, help="number of petals k")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("norm", help="(t,k)-norm: sum of d(T)^k over t-sets")
    p.add_argument("file")
    p.add_argument("--kernel", type=int, default=None, help="t (default r-1)")
    p.add_argument("--power", type=int, required=True, help="integer exponent k")
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("matching", help="matching number and a witness")
    p.add_argument("file")
    p.set_defaults(func=cmd_matching)

    p = sub.add_parser("shift", help="apply S_ij and print the result")
    p.add_argument("file")
    p.add_argument("--pair", type=int, nargs=2, metavar=("I", "J"), required=True)
    p.set_defaults(func=cmd_shift)

    p = sub.add_parser("stabilize", help="shift until stable; prints trace then the family")
    p.add_argument("file")
    p.set_defaults(func=cmd_stabilize)

    p = sub.add_parser("verify", help="run a seeded property suite")
    p.add_argument("suite", choices=sorted(SUITES) + ["all"])
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"default {DEFAULT_SEED}")
    p.add_argument("--trials", type=int, default=1000, help="default 1000")
    p.add_argument("--format", choices=("table", "csv"), default="table")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="exhaustive maximum over r-graphs with nu < s")
    p.add_argument("objective", choices=OBJECTIVES)
    p.add_argument("--vertices", type=int, required=True, help="n")
    p.add_argument("--uniformity", type=int, required=True, help="r")
    p.add_argument("--forbid-matching", type=int, required=True, help="s: require nu < s")
    p.add_argument("--petals", type=int, default=None, help="k (sunflower petals / norm power)")
    p.add_argument("--shifted-only", action="store_true", help="search shifted families only")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    p.add_argument("--format", choices=("table", "csv", "text"), default="table")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("counterexample", help="search for a shift breaking a property")
    p.add_argument("target", help="e.g. sunflower:1,2  path:2  cycle:3  star:2  triangle")
    p.add_argument("--uniformity", type=int, required=True, help="r")
    p.add_argument("--max-vertices", type=int, required=True, help="largest n tried")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"default {DEFAULT_SEED}")
    p.add_argument("--trials", type=int, default=300, help="random families per n")
    p.set_defaults(func=cmd_counterexample)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GuardExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ParseError, HypergraphError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
