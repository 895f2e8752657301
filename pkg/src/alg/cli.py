"""``alg`` command-line driver.

Exit codes: 0 success, 1 identity violation, 2 parse error or bad usage,
3 resource limit exceeded, 4 numeric error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import report
from .catalog import graph_catalog
from .errors import GraphError, NumericError, ParseError, ResourceLimitError
from .graph import is_bipartite
from .graph6 import to_graph6

EXIT_VIOLATION, EXIT_USAGE, EXIT_LIMIT, EXIT_NUMERIC = 1, 2, 3, 4


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _parse_range(text: str) -> range:
    try:
        lo, hi = (int(x) for x in text.split(".."))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(lo, hi + 1)


def _parse_parts(text: str) -> list[int]:
    try:
        parts = [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated sizes, got {text!r}") from None
    if not parts or min(parts) < 1:
        raise argparse.ArgumentTypeError(f"part sizes must be positive: {text!r}")
    return parts


def cmd_analyze(args: argparse.Namespace) -> int:
    graphs = report.read_graphs(_read_input(args.input))
    skip = {s for s in args.skip.split(",") if s} if args.skip else set()
    unknown = skip - set(report.STAGES)
    if unknown:
        print(f"unknown stage(s): {', '.join(sorted(unknown))}; "
              f"valid: {', '.join(report.STAGES)}", file=sys.stderr)
        return EXIT_USAGE
    for g in graphs:
        rep = report.analyze(g, skip=skip, cutoff_ms=args.cutoff_ms)
        if args.format == "json":
            print(report.dumps(rep.to_dict(with_timings=args.timings)))
        else:
            print(report.format_table(rep))
        bad = rep.bound_violations()
        if bad:
            print(f"bound violation: {'; '.join(bad)}", file=sys.stderr)
            return EXIT_NUMERIC
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    if args.graphs:
        graphs = report.read_graphs(_read_input(args.graphs))
    else:
        graphs = report.identity_instances(args.identity, args.n_max, args.samples, args.seed)
    checked = failed = 0
    for g, ok in report.verify(args.identity, graphs):
        checked += 1
        if not ok:
            failed += 1
            print(f"FAIL {args.identity} {to_graph6(g)}")
    status = "pass" if failed == 0 else "fail"
    print(f"{status} {args.identity}: {checked} graphs checked, {failed} violations")
    return 0 if failed == 0 else EXIT_VIOLATION


def cmd_sweep(args: argparse.Namespace) -> int:
    with open(args.file) as fh:
        lines = fh.read().splitlines()
    summary, records = report.sweep(lines, cutoff_ms=args.cutoff_ms)
    if args.out:
        with open(args.out, "w") as fh:
            for r in records:
                fh.write(report.dumps(r) + "\n")
    print(json.dumps(summary.to_dict(), indent=2))
    return 0


def cmd_family(args: argparse.Namespace) -> int:
    if args.name == "odd-cycle":
        rows = report.odd_cycle_rows(args.range or range(1, 11))
    elif args.name == "multipartite":
        if args.parts:
            plist = args.parts
        else:
            plist = [[k, k, k] for k in (args.range or range(1, 4))]
        rows = report.multipartite_rows(plist)
    else:
        rows = report.cubic_rows(args.range or range(4, 13))
    print(report.render_rows(rows, args.format))
    return 0


def cmd_catalog(args: argparse.Namespace) -> int:
    for g in graph_catalog(args.n_max, connected=args.connected, n_min=args.n_min):
        if args.max_edges is not None and g.m > args.max_edges:
            continue
        if args.non_bipartite and is_bipartite(g):
            continue
        print(to_graph6(g))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="alg", description="Antisymmetric line graph invariants.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="full invariant report for one or more graphs")
    a.add_argument("input", help="graph6 or edge-list file, or - for stdin")
    a.add_argument("--format", choices=("json", "table"), default="json")
    a.add_argument("--skip", default="", help=f"comma list from {','.join(report.STAGES)}")
    a.add_argument("--cutoff-ms", type=float, default=None, help="per-stage time limit")
    a.add_argument("--timings", action="store_true", help="include per-stage milliseconds")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="check an identity over a set of graphs")
    v.add_argument("identity", choices=sorted(report.IDENTITIES))
    v.add_argument("--n-max", type=int, default=None)
    v.add_argument("--graphs", default=None, help="graph6 file instead of the built-in set")
    v.add_argument("--samples", type=int, default=50, help="size of random samples")
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="batch analysis of a graph6 file")
    s.add_argument("file")
    s.add_argument("--cutoff-ms", type=float, default=report.DEFAULT_CUTOFF_MS)
    s.add_argument("--out", default=None, help="write per-graph JSONL here")
    s.set_defaults(func=cmd_sweep)

    f = sub.add_parser("family", help="tables for graph families")
    f.add_argument("name", choices=("odd-cycle", "multipartite", "cubic-catalog"))
    f.add_argument("--range", type=_parse_range, default=None, help="a..b")
    f.add_argument("--parts", type=_parse_parts, action="append", default=None,
                   help="part sizes such as 2,2,2 (repeatable)")
    f.add_argument("--format", choices=("markdown", "csv"), default="markdown")
    f.set_defaults(func=cmd_family)

    c = sub.add_parser("catalog", help="print graphs up to isomorphism in graph6")
    c.add_argument("--n-max", type=int, default=7)
    c.add_argument("--n-min", type=int, default=1)
    c.add_argument("--connected", action="store_true")
    c.add_argument("--non-bipartite", action="store_true")
    c.add_argument("--max-edges", type=int, default=None)
    c.set_defaults(func=cmd_catalog)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as e:
        print(f"resource limit: {e}", file=sys.stderr)
        return EXIT_LIMIT
    except NumericError as e:
        print(f"numeric error: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    except (GraphError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
