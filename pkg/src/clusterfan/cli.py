"""Command-line front end.

Subcommands map one-to-one onto the library layers: roots, group, mutate,
assoc, catalan, wiring, and verify.  Output is deterministic for a fixed
seed.  Exit codes: 0 success, 1 verification failure, 2 usage error,
3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .cartan import b_matrix, cartan_for_type, parse_cartan_text
from .roots import ClosureBudgetExceeded, root_system, to_json_dict
from .coxeter import (
    BudgetExceeded,
    build_group,
    count_reduced_words,
    hasse_dot,
    weak_order,
)
from .mutation import (
    MutationBudgetExceeded,
    detect_finite_type,
    explore,
    graph_to_dict,
    graph_to_dot,
    initial_seed,
)
from .assoc import (
    almost_positive,
    build_polytope,
    cluster_complex,
    compatibility,
    polytope_json,
    polytope_off,
    support_function,
)
from .catalan import enumeration_report, report_csv
from .cartan import dynkin_name
from .coxeter import absolute_interval, coxeter_element
from . import wiring
from .verify import render_report, run_battery

FORMATS = {
    "roots": ("text", "json"),
    "group": ("text", "json", "dot"),
    "mutate": ("text", "json", "dot"),
    "assoc": ("text", "json", "off"),
    "catalan": ("text", "csv", "json"),
    "wiring": ("text", "json", "dot"),
}


def _entries_from_args(parser: argparse.ArgumentParser, args) -> list[list[int]]:
    if args.matrix_file:
        with open(args.matrix_file) as handle:
            text = handle.read().strip()
        try:
            rows = json.loads(text)
        except json.JSONDecodeError:
            return [list(r) for r in parse_cartan_text(text)]
        return [list(map(int, row)) for row in rows]
    if args.type:
        return [list(r) for r in cartan_for_type(args.type)]
    parser.error("one of --type or --matrix-file is required")


def _check_format(parser, command: str, fmt: str) -> str:
    if fmt not in FORMATS[command]:
        parser.error(
            f"format {fmt!r} is not supported by {command}"
            f" (choose from {', '.join(FORMATS[command])})"
        )
    return fmt


def cmd_roots(parser, args) -> tuple[int, str]:
    rs = root_system(tuple(tuple(r) for r in _entries_from_args(parser, args)))
    if args.format == "json":
        return 0, json.dumps(to_json_dict(rs), indent=2, sort_keys=True)
    lines = [
        f"type {dynkin_name(rs.dynkin)}",
        f"rank {rs.n}",
        f"positive roots {rs.num_positive}",
    ]
    for root in rs.positive_roots():
        lines.append(
            "  "
            + " ".join(f"{c:+d}" for c in root.coords)
            + f"  height {root.height}"
        )
    return 0, "\n".join(lines)


def cmd_group(parser, args) -> tuple[int, str]:
    rs = root_system(tuple(tuple(r) for r in _entries_from_args(parser, args)))
    group = build_group(rs)
    if args.format == "dot":
        return 0, hasse_dot(group, weak_order(group))
    stats = {
        "type": dynkin_name(rs.dynkin),
        "order": len(group.elements),
        "longest_length": group.length[group.w0],
        "reduced_words_of_w0": count_reduced_words(group, group.w0),
    }
    if args.format == "json":
        return 0, json.dumps(stats, indent=2, sort_keys=True)
    return 0, "\n".join(f"{key} {value}" for key, value in stats.items())


def cmd_mutate(parser, args) -> tuple[int, str]:
    entries = _entries_from_args(parser, args)
    if args.type and not args.matrix_file:
        rows = b_matrix(tuple(tuple(r) for r in entries))
    else:
        rows = tuple(tuple(r) for r in entries)
    n = len(rows[0])
    names = [f"x{i+1}" for i in range(n)]
    frozen = [f"c{i+1}" for i in range(len(rows) - n)]
    record = explore(initial_seed(rows, names, frozen), budget=args.budget_seeds)
    if args.format == "dot":
        return 0, graph_to_dot(record)
    if args.format == "json":
        return 0, json.dumps(graph_to_dict(record), indent=2, sort_keys=True)
    detected = detect_finite_type(tuple(tuple(row[:n]) for row in rows[:n]))
    lines = [
        f"seeds {len(record.seeds)}",
        f"variables {len(record.variables)}",
        f"closed {record.closed}",
        f"detected {dynkin_name(detected) if detected else 'not finite'}",
    ]
    return 0, "\n".join(lines)


def cmd_assoc(parser, args) -> tuple[int, str]:
    rs = root_system(tuple(tuple(r) for r in _entries_from_args(parser, args)))
    data = cluster_complex(compatibility(almost_positive(rs)))
    support = support_function(data.ap, build_group(rs))
    poly = build_polytope(data, support)
    if args.format == "off":
        if rs.n != 3:
            parser.error("OFF output is only defined for rank 3")
        return 0, polytope_off(poly)
    if args.format == "json":
        return 0, polytope_json(poly)
    lines = [
        f"type {dynkin_name(rs.dynkin)}",
        f"facets {len(data.facets)}",
        f"vertices {len(poly.vertices)}",
        "f_vector " + " ".join(map(str, data.f_vector)),
        "h_vector " + " ".join(map(str, data.h_vector)),
    ]
    return 0, "\n".join(lines)


def cmd_catalan(parser, args) -> tuple[int, str]:
    rs = root_system(tuple(tuple(r) for r in _entries_from_args(parser, args)))
    group = build_group(rs)
    interval = absolute_interval(group, coxeter_element(group))
    rows = enumeration_report(rs, group, interval)
    mismatches = [row for row in rows if not row["match"]]
    code = 1 if mismatches else 0
    if args.format == "csv":
        return code, report_csv(rows)
    if args.format == "json":
        return code, json.dumps(rows, indent=2, sort_keys=True)
    lines = [
        f"{row['type']} {row['interpretation']} k={row['k']}"
        f" observed={row['observed']} expected={row['expected']}"
        f" {'ok' if row['match'] else 'MISMATCH'}"
        for row in rows
    ]
    return code, "\n".join(lines)


def cmd_wiring(parser, args) -> tuple[int, str]:
    if args.format == "dot":
        return 0, wiring.enumerate_classes(3).to_dot()
    report = wiring.gl3_cell(rng_seed=args.rng_seed)
    if args.format == "json":
        return 0, wiring.report_json(report)
    keys = (
        "isotopy_classes",
        "cluster_variable_count",
        "cluster_count",
        "detected_type",
        "wiring_clusters_embedded",
        "jacobian_rank",
    )
    return 0, "\n".join(f"{key} {report[key]}" for key in keys)


def cmd_verify(parser, args) -> tuple[int, str]:
    extended = args.extended
    results = run_battery(extended=extended, rng_seed=args.rng_seed)
    text = render_report(results, extended=extended)
    return (0 if all(r.passed for r in results) else 1), text


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clusterfan",
        description="Exact computations with root systems, cluster mutation,"
        " and generalized associahedra.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=True, matrix=True):
        if matrix:
            p.add_argument("--type", help="Dynkin type name, e.g. A3 or B2")
            p.add_argument(
                "--matrix-file",
                help="file holding a matrix (JSON rows, or type:/matrix: text)",
            )
        if formats:
            p.add_argument(
                "--format",
                default="text",
                help="output format (availability depends on the command)",
            )
        p.add_argument("--out", help="write output to this file")
        p.add_argument("--rng-seed", type=int, default=11)

    handlers = {
        "roots": cmd_roots,
        "group": cmd_group,
        "mutate": cmd_mutate,
        "assoc": cmd_assoc,
        "catalan": cmd_catalan,
        "wiring": cmd_wiring,
    }
    for name, handler in handlers.items():
        p = sub.add_parser(name)
        common(p, matrix=name not in ("wiring",))
        if name == "mutate":
            p.add_argument("--budget-seeds", type=int, default=10**5)
        p.set_defaults(handler=handler)

    p = sub.add_parser("verify")
    p.add_argument("--quick", action="store_true", default=True)
    p.add_argument("--extended", action="store_true")
    p.add_argument("--out", help="write the report to this file")
    p.add_argument("--rng-seed", type=int, default=11)
    p.set_defaults(handler=cmd_verify, format="text")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command in FORMATS:
        _check_format(parser, args.command, args.format)
    try:
        code, text = args.handler(parser, args)
    except (MutationBudgetExceeded, BudgetExceeded, ClosureBudgetExceeded) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    if args.out:
        with open(args.out, "w") as handle:
            handle.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
