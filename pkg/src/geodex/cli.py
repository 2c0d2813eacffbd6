"""Command line: ``geodex construct|analyze|verify-theorem2|verify-table1|transitivity``."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import census
from .autsearch import automorphism_group
from .errors import (BadParameter, BudgetExceeded, GeodexError, NotAutomorphisms, ParseError,
                     TupleBudgetExceeded, UnknownName)
from .io import read_edge_list, read_generators, write_edge_list
from .symmetry import Mode, transitivity

EXIT_OK, EXIT_FAIL, EXIT_BUDGET = 0, 1, 2


def _params(pairs: list[str]) -> dict[str, str]:
    out = {}
    for p in pairs:
        key, sep, value = p.partition("=")
        if not sep or not key:
            raise BadParameter(f"expected k=v, got {p!r}")
        out[key.strip()] = value.strip()
    return out


def _emit(data: dict, out: str | None) -> None:
    text = json.dumps(data, indent=2, sort_keys=False) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_construct(args) -> int:
    g = census.build(args.name, _params(args.param))
    labels = args.labels or f"{args.out}.labels"
    write_edge_list(g, args.out, labels)
    print(f"{args.name}: {g.n} vertices, {g.edge_count} edges -> {args.out} (labels: {labels})")
    return EXIT_OK


def cmd_analyze(args) -> int:
    g = read_edge_list(args.file, args.labels)
    info = census.analyze(g)
    if args.json:
        _emit({"schema_version": census.SCHEMA_VERSION, "file": str(args.file), **info}, None)
    else:
        for key, value in info.items():
            if key != "degrees":
                print(f"{key:>18}: {value}")
    return EXIT_OK


def cmd_verify(args, runner) -> int:
    report = runner(args.jobs)
    data = report.to_dict(timings=args.timings)
    _emit(data, args.out)
    for item in report.items:
        for c in item.claims:
            if args.verbose or c.verdict.value != "PASS":
                extra = f" ({c.reason})" if c.reason else ""
                print(f"{c.verdict.value:7} {item.id} :: {c.name}{extra}", file=sys.stderr)
    counts = report.counts()
    print(f"PASS {counts['PASS']}  FAIL {counts['FAIL']}  SKIPPED {counts['SKIPPED']}", file=sys.stderr)
    return report.exit_code()


def cmd_transitivity(args) -> int:
    g = read_edge_list(args.file)
    if args.group == "auto":
        group, label = automorphism_group(g), "Aut(graph)"
    else:
        group, label = read_generators(args.group), f"generators from {args.group}"
    rep = transitivity(g, group, Mode(args.mode), args.s, group_label=label)
    _emit({"schema_version": census.SCHEMA_VERSION, "file": str(args.file),
           "group_order": group.order(), **rep.to_dict()}, args.out)
    return EXIT_OK


def parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="geodex", description="Geodesic-transitivity census tools.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="write a named graph as an edge list")
    p.add_argument("name")
    p.add_argument("--param", action="append", default=[], metavar="K=V")
    p.add_argument("--out", required=True)
    p.add_argument("--labels", help="label file (default: <out>.labels)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("analyze", help="invariants of an edge-list graph")
    p.add_argument("file")
    p.add_argument("--labels")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    for name, runner in (("verify-theorem2", census.verify_theorem2),
                         ("verify-table1", census.verify_table1)):
        p = sub.add_parser(name)
        p.add_argument("--out", help="write the JSON report here instead of stdout")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--timings", action="store_true", help="include per-item wall time")
        p.add_argument("--verbose", action="store_true", help="print every claim, not only non-PASS")
        p.set_defaults(func=lambda a, r=runner: cmd_verify(a, r))

    p = sub.add_parser("transitivity", help="s-arc / s-geodesic / distance transitivity report")
    p.add_argument("file")
    p.add_argument("--group", default="auto", help="generator JSON file, or 'auto'")
    p.add_argument("--mode", choices=[m.value for m in Mode], default="geodesic")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_transitivity)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = parser().parse_args(argv)
    try:
        return args.func(args)
    except (BudgetExceeded, TupleBudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UnknownName, BadParameter, ParseError, NotAutomorphisms, GeodexError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {type(exc).__name__}: {msg}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
