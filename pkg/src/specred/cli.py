"""Command-line entry point.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 resource guard exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys

from . import __version__
from .coincidence import Kind, enumerate_two_common, search_one_common
from .errors import ResourceGuardError
from .graph import CANONICAL_VERSION, DEFAULT_CANON_MAX_N, PineappleParams, build_pineapple, parse_graph6
from .pineapple import (
    b_count,
    c_count,
    member_radius,
    pineapple_spectrum,
    radius_collisions,
    redundancy,
    redundancy_curve,
    stable_tail_start,
    subgraph_family,
)
from .poly import decimal_str
from .spectrum import complementarity_spectrum, group_equal
from .verify import run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _report(command: str, inputs: dict, results) -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "results": results,
        "version": __version__,
        "canonical_form_version": CANONICAL_VERSION,
    }


def _emit_json(obj, out) -> None:
    out.write(json.dumps(obj, indent=2))
    out.write("\n")


def _read_graph6(args) -> str:
    if args.graph6:
        return args.graph6
    if args.file:
        with open(args.file) as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise UsageError("no graph6 input")
    return lines[0].strip()


def _pineapple_results(p: PineappleParams, digits: int) -> dict:
    family = subgraph_family(p)
    distinct = group_equal(family, member_radius)
    return {
        "pineapple": pineapple_spectrum(p).to_dict(digits),
        "b": b_count(p),
        "c": c_count(p),
        "redundancy": str(redundancy(p)),
        "redundancy_decimal": decimal_str(redundancy(p), digits),
        "collisions": [[[m.alpha, m.beta] for m in grp] for grp in radius_collisions(p)],
        "spectrum": [member_radius(grp[0]).to_dict(digits) for grp in distinct],
    }


def cmd_spectrum(args, out) -> int:
    digits = args.digits
    if args.alpha is not None or args.beta is not None:
        if args.alpha is None or args.beta is None:
            raise UsageError("--alpha and --beta go together")
        p = PineappleParams(args.alpha, args.beta)
        results = _pineapple_results(p, digits)
        status = EXIT_OK
        if args.oracle:
            rep = complementarity_spectrum(build_pineapple(p), max_n=args.max_n)
            agrees = (rep.b, rep.c, rep.redundancy) == (results["b"], results["c"], redundancy(p))
            results["oracle"] = {**rep.to_dict(digits), "agrees": agrees}
            status = EXIT_OK if agrees else EXIT_FAIL
        _emit_json(_report("spectrum", {"alpha": p.alpha, "beta": p.beta, "oracle": args.oracle}, results), out)
        return status
    text = _read_graph6(args)
    g = parse_graph6(text)
    rep = complementarity_spectrum(g, max_n=args.max_n)
    _emit_json(_report("spectrum", {"graph6": text}, rep.to_dict(digits)), out)
    return EXIT_OK


_KIND_FILTER = {
    "all": None,
    "radius": {Kind.ONE_COMMON_RADIUS, Kind.TWO_COMMON_LARGEST},
    "non-radius": {Kind.ONE_COMMON_NON_RADIUS},
}


def cmd_search(args, out) -> int:
    if args.family == "two-common":
        if args.max_k < 3:
            raise UsageError("--max-k must be >= 3")
        pairs = enumerate_two_common(args.max_k, jobs=args.jobs)
    else:
        if args.max_rho < 1:
            raise UsageError("--max-rho must be >= 1")
        pairs = search_one_common(args.max_rho, jobs=args.jobs)
        allowed = _KIND_FILTER[args.kind]
        if allowed is not None:
            pairs = [p for p in pairs if p.kind in allowed]
    for p in pairs:
        out.write(json.dumps(p.to_dict(args.digits)))
        out.write("\n")
    return EXIT_OK


def cmd_limits(args, out) -> int:
    if (args.alpha is None) == (args.beta is None):
        raise UsageError("give exactly one of --alpha or --beta")
    if args.alpha is not None:
        start = 0 if args.beta_from is None else args.beta_from
        stop = start + 20 if args.beta_to is None else args.beta_to
        rows = redundancy_curve(alpha=args.alpha, start=start, stop=stop)
        name = "beta"
    else:
        start = 2 if args.alpha_from is None else args.alpha_from
        stop = start + 20 if args.alpha_to is None else args.alpha_to
        rows = redundancy_curve(beta=args.beta, start=start, stop=stop)
        name = "alpha"
    if stop < start:
        raise UsageError("empty range")
    tail = stable_tail_start(rows)
    w = csv.writer(out, lineterminator="\n")
    w.writerow([name, "b", "c", "b_minus_c", "r", "r_decimal", "stable_tail"])
    for i, row in enumerate(rows):
        w.writerow([
            row.param, row.b, row.c, row.excess, str(row.redundancy),
            decimal_str(row.redundancy, args.digits), int(tail is not None and i >= tail),
        ])
    return EXIT_OK


def cmd_verify(args, out) -> int:
    for name, ok, detail in run_suite(args.suite):
        out.write(f"{'PASS' if ok else 'FAIL'} {name}: {detail}\n")
        if not ok:
            out.write(f"first failing check: {name}\n")
            return EXIT_FAIL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="specred", description="Complementarity spectra and spectral redundancy of graphs.")
    parser.add_argument("--digits", type=int, default=6, help="decimal places in displayed numbers (default 6)")
    parser.add_argument("--jobs", type=int, default=1, help="worker processes for search sweeps")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="b, c, r and the complementarity spectrum")
    sp.add_argument("graph6", nargs="?", help="graph6 string (default: --file or stdin)")
    sp.add_argument("--file")
    sp.add_argument("--alpha", type=int)
    sp.add_argument("--beta", type=int)
    sp.add_argument("--oracle", action="store_true", help="cross-check the pineapple fast path by enumeration")
    sp.add_argument("--max-n", type=int, default=DEFAULT_CANON_MAX_N, help="oracle size guard")
    sp.set_defaults(func=cmd_spectrum)

    se = sub.add_parser("search", help="pineapple pairs sharing eigenvalues (JSON lines)")
    fam = se.add_subparsers(dest="family", required=True)
    two = fam.add_parser("two-common")
    two.add_argument("--max-k", type=int, required=True)
    two.set_defaults(func=cmd_search)
    one = fam.add_parser("one-common")
    one.add_argument("--max-rho", type=int, required=True)
    one.add_argument("--kind", choices=sorted(_KIND_FILTER), default="all")
    one.set_defaults(func=cmd_search)

    li = sub.add_parser("limits", help="redundancy curve as CSV")
    li.add_argument("--alpha", type=int)
    li.add_argument("--beta", type=int)
    li.add_argument("--beta-from", type=int)
    li.add_argument("--beta-to", type=int)
    li.add_argument("--alpha-from", type=int)
    li.add_argument("--alpha-to", type=int)
    li.set_defaults(func=cmd_limits)

    ve = sub.add_parser("verify", help="run a self-check suite")
    ve.add_argument("--suite", choices=["examples", "lemmas", "oracle", "all"], default="all")
    ve.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    if args.digits < 0 or args.jobs < 1:
        print("specred: --digits must be >= 0 and --jobs >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except ResourceGuardError as exc:
        print(f"specred: resource guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (UsageError, ValueError) as exc:
        print(f"specred: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
