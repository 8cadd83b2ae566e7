"""Command-line front end.

Exit codes: 0 success, 1 property check failed, 2 parse or format error,
3 semantic query error, 4 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence
from pathlib import Path

from .chase import chase
from .classify import Classifier, conflict_degree
from .core import Delta, canonical_key
from .formats import (
    FormatError,
    format_fds,
    format_inc,
    format_schema,
    format_tuple,
    parse_tuple_literal,
    read_fds,
    read_schema,
    read_table,
    table_csv,
)
from .fourlogic import default_probes, merge_sources, merged_truth_report
from .oracle import RandomInstanceSpec
from .properties import CHECKS, run_suite
from .query import (
    QuerySyntaxError,
    QueryTypeError,
    RepairCapExceeded,
    annotate,
    consistent_answer,
    parse_query,
    plain_answer,
    repair_answers,
    repairs_by_choice,
)

EXIT_OK, EXIT_CHECK, EXIT_PARSE, EXIT_QUERY, EXIT_CAP = 0, 1, 2, 3, 4


def _load(args: argparse.Namespace) -> Delta:
    universe = read_schema(args.schema)
    table = read_table(args.table, universe)
    fds = read_fds(args.fds, universe)
    return Delta(universe, table, fds)


def _outdir(path: str) -> Path:
    out = Path(path)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_chase(args: argparse.Namespace) -> int:
    delta = _load(args)
    result = chase(delta)
    u = delta.universe
    out = _outdir(args.out)
    (out / "dstar.csv").write_text(table_csv(result.dstar, u), encoding="utf-8")
    (out / "inc.txt").write_text(format_inc(result.inc, u), encoding="utf-8")
    s = result.stats
    stats = (
        f"input_rows: {len(delta.table)}\n"
        f"output_rows: {len(result.dstar)}\n"
        f"iterations: {s.iterations}\n"
        f"peak_working_set: {s.peak_working_set}\n"
        f"pairs_examined: {s.pairs_examined}\n"
        f"conflict_degree: {conflict_degree(result)}\n"
    )
    (out / "stats.txt").write_text(stats, encoding="utf-8")
    print(f"{len(result.dstar)} rows, {sum(len(x) for x in result.inc.nonempty().values())} conflicts")
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    delta = _load(args)
    clf = Classifier(delta)
    u = delta.universe
    out = _outdir(args.out)
    labels = {t: clf(t) for t in clf.result.dstar}
    (out / "labeled.csv").write_text(table_csv(clf.result.dstar, u, extra=labels), encoding="utf-8")
    (out / "inc_tuples.csv").write_text(table_csv(clf.incs, u), encoding="utf-8")
    print(f"{len(clf.result.dstar)} rows, {len(clf.incs)} inconsistent tuples")
    return EXIT_OK


def cmd_truth(args: argparse.Namespace) -> int:
    delta = _load(args)
    t = parse_tuple_literal(args.tuple, delta.universe)
    print(Classifier(delta)(t))
    return EXIT_OK


def cmd_merge(args: argparse.Namespace) -> int:
    base = read_schema(args.schema) if args.schema else None
    sources = []
    for spec in args.source:
        if len(spec) not in (2, 3):
            raise FormatError("--source takes TABLE FDS [SCHEMA]")
        if len(spec) == 3:
            universe = read_schema(spec[2])
        elif base is not None:
            universe = base
        else:
            raise FormatError("a source without its own schema needs --schema")
        sources.append(Delta(universe, read_table(spec[0], universe), read_fds(spec[1], universe)))
    try:
        merged = merge_sources(sources)
    except ValueError as e:
        raise FormatError(str(e)) from e
    u = merged.universe
    if args.probe:
        probes = [parse_tuple_literal(p, u) for p in args.probe]
    else:
        probes = default_probes(sources, merged)
    report = merged_truth_report(sources, probes)
    report.sort(key=lambda r: canonical_key(r.tuple, u))
    lines = ["tuple | per-source | fold | merged | equal"]
    for r in report:
        vals = ",".join(map(str, r.per_source))
        lines.append(f"{format_tuple(r.tuple, u)} | {vals} | {r.fold} | {r.merged} | {'yes' if r.equal else 'no'}")
    out = _outdir(args.out)
    (out / "merged.csv").write_text(table_csv(merged.table, u), encoding="utf-8")
    (out / "merged_fds.txt").write_text(format_fds(merged.fds, u), encoding="utf-8")
    (out / "merged_schema.txt").write_text(format_schema(u), encoding="utf-8")
    (out / "report.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")
    unequal = sum(not r.equal for r in report)
    print(f"{len(merged.table)} rows merged from {len(sources)} sources; {len(report)} probes, {unequal} unequal")
    return EXIT_OK


def cmd_query(args: argparse.Namespace) -> int:
    delta = _load(args)
    q = parse_query(args.query, delta.universe)
    clf = Classifier(delta)
    result = clf.result
    if args.mode == "plain":
        ans = plain_answer(q, result)
    elif args.mode == "consistent":
        ans = consistent_answer(q, result)
    else:
        lower, upper = repair_answers(q, result)
        ans = lower if args.mode == "lower" else upper
    extra = annotate(ans, clf).labels if args.annotate else None
    text = table_csv(ans.tuples, delta.universe, extra=extra, columns=q.select)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_repairs(args: argparse.Namespace) -> int:
    delta = _load(args)
    reps = repairs_by_choice(chase(delta), cap=args.cap)
    u = delta.universe
    ordered = sorted(reps, key=lambda r: [canonical_key(t, u) for t in sorted(r, key=lambda t: canonical_key(t, u))])
    out = _outdir(args.out)
    for i, r in enumerate(ordered, 1):
        (out / f"repair_{i}.csv").write_text(table_csv(r, u), encoding="utf-8")
    print(len(ordered))
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    spec = RandomInstanceSpec(seed=args.seed)
    report = run_suite(args.instances, args.seed, args.only or None, spec)
    for name, count in report.counts.items():
        status = "pass" if count == 0 else f"FAIL ({count} instances)"
        print(f"{name}: {status}")
    print(f"{report.instances} instances in {report.seconds:.1f}s; {len(report.discrepancies)} repair-procedure discrepancies")
    if args.report:
        Path(args.report).write_text("".join(line + "\n" for line in report.lines()), encoding="utf-8")
    return EXIT_OK if report.ok else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fdchase", description="Chase, classify and query tables with nulls under FDs.")
    sub = p.add_subparsers(dest="command", required=True)

    def data_cmd(name: str, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--schema", required=True, help="schema file")
        sp.add_argument("--table", required=True, help="CSV table")
        sp.add_argument("--fds", help="FD file (none means no dependencies)")
        return sp

    sp = data_cmd("chase", "chase a table; writes dstar.csv, inc.txt, stats.txt")
    sp.add_argument("--out", required=True, help="output directory")
    sp.set_defaults(func=cmd_chase)

    sp = data_cmd("classify", "label chased rows; writes labeled.csv and inc_tuples.csv")
    sp.add_argument("--out", required=True, help="output directory")
    sp.set_defaults(func=cmd_classify)

    sp = data_cmd("truth", "print the truth value of one tuple")
    sp.add_argument("tuple", help="tuple literal such as Id=i1,K=k")
    sp.set_defaults(func=cmd_truth)

    sp = sub.add_parser("merge", help="merge sources and report per-tuple truth values")
    sp.add_argument("--schema", help="schema shared by sources that do not name their own")
    sp.add_argument("--source", nargs="+", action="append", required=True, metavar="FILE",
                    help="TABLE FDS [SCHEMA]; repeat once per source")
    sp.add_argument("--probe", action="append", help="tuple literal to report on (repeatable)")
    sp.add_argument("--out", required=True, help="output directory")
    sp.set_defaults(func=cmd_merge)

    sp = data_cmd("query", "answer SELECT X [WHERE cond]")
    sp.add_argument("query", help='query text, e.g. "SELECT Id,K WHERE C = \'c\'"')
    sp.add_argument("--mode", choices=["plain", "consistent", "lower", "upper"], default="consistent")
    sp.add_argument("--annotate", action="store_true", help="append each answer's truth value in the whole table")
    sp.add_argument("--out", help="write CSV here instead of standard output")
    sp.set_defaults(func=cmd_query)

    sp = data_cmd("repairs", "write one CSV per repair and print their number")
    sp.add_argument("--out", required=True, help="output directory")
    sp.add_argument("--cap", type=int, default=10_000, help="largest choice product to enumerate")
    sp.set_defaults(func=cmd_repairs)

    sp = sub.add_parser("check", help="run the randomized cross-checks against the oracle")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--instances", type=int, default=1000)
    sp.add_argument("--only", action="append", choices=sorted(CHECKS), help="run just this check (repeatable)")
    sp.add_argument("--report", help="write the discrepancy report here")
    sp.set_defaults(func=cmd_check)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except RepairCapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP
    except QueryTypeError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_QUERY
    except (FormatError, QuerySyntaxError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
