"""Command line: ``lidcolor {gen,verify,color,stats}``.

Exit codes: 0 success, 1 invalid coloring or no solution within the limit,
2 input error, 3 capacity exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from lidcolor.errors import CapacityError, LidError, UsageError
from lidcolor.generators import FAMILIES, generate
from lidcolor.graph import Graph
from lidcolor.io import (
    format_coloring,
    format_forest,
    format_graph,
    parse_coloring,
    parse_forest,
    parse_graph,
)
from lidcolor.lid_layers import layer_construction, separation_trace
from lidcolor.lid_product import LowTdColoring, lid_color_product, product_bound
from lidcolor.lid_treedepth import lid_color_td
from lidcolor.oracle import chi_exact, chi_lid_exact, chi_td_p_exact
from lidcolor.treedepth import EliminationForest, treedepth_exact
from lidcolor.verify import verify_lid

EXIT_OK, EXIT_INVALID, EXIT_INPUT, EXIT_CAPACITY = 0, 1, 2, 3
STRATEGIES = ("treedepth", "product", "layers", "brute")
MEASURES = ("treedepth", "chi", "chi-lid", "chi-td3")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="ascii")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="ascii", newline="\n")


def cmd_gen(args: argparse.Namespace) -> int:
    g = generate(args.family, args.n, args.seed)
    _emit(format_graph(g, f"{args.family} n={args.n} seed={args.seed}"), args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    g = parse_graph(_read(args.graph))
    colors = parse_coloring(_read(args.coloring), g.n)
    report = verify_lid(g, colors)
    print(report.describe())
    return EXIT_OK if report.valid else EXIT_INVALID


def _color(g: Graph, args: argparse.Namespace) -> tuple[list[int] | None, bool, list[str]]:
    """Coloring, whether its strategy bound holds, and debug lines."""
    if args.strategy == "treedepth":
        if args.forest:
            forest = EliminationForest(parse_forest(_read(args.forest), g.n))
        else:
            _, forest = treedepth_exact(g)
        colors = lid_color_td(g, forest, debug=args.debug_trace)
        return colors, len(set(colors)) <= max(2 * forest.height - 1, 0), []
    if args.strategy == "product":
        if args.classes:
            classes = LowTdColoring(tuple(parse_coloring(_read(args.classes), g.n)))
        else:
            classes = chi_td_p_exact(g, 3).witness
        colors = lid_color_product(g, classes)
        return colors, len(set(colors)) <= product_bound(classes.q), []
    if args.strategy == "layers":
        result = layer_construction(g, args.layer_colorer, args.proper_colorer, args.minor_bound)
        lines = separation_trace(g, result) if args.debug_trace else []
        ok = result.bound_ok and result.slot_bound_ok is not False
        return result.colors, ok, lines
    result = chi_lid_exact(g, args.max_colors)
    if result.value is None:
        return None, False, []
    return result.witness, True, []


def cmd_color(args: argparse.Namespace) -> int:
    g = parse_graph(_read(args.graph))
    start = time.perf_counter()
    colors, bound_ok, lines = _color(g, args)
    millis = round((time.perf_counter() - start) * 1000, 3)
    for line in lines:
        print(line, file=sys.stderr)
    if colors is None:
        print(f"no lid-coloring with at most {args.max_colors} colors", file=sys.stderr)
        return EXIT_INVALID
    if args.max_colors is not None and len(set(colors)) > args.max_colors:
        bound_ok = False
    text = format_coloring(colors)
    # re-verify what is actually written, not the in-memory list
    valid = verify_lid(g, parse_coloring(text, g.n)).valid
    _emit(text, args.out)
    record = {
        "graph": args.graph,
        "strategy": args.strategy,
        "colors": len(set(colors)),
        "valid": valid,
        "bound_ok": bound_ok,
        "millis": millis,
        "seed": args.seed,
    }
    line = json.dumps(record)
    if args.record:
        with open(args.record, "a", encoding="ascii", newline="\n") as fh:
            fh.write(line + "\n")
    else:
        print(line, file=sys.stderr)
    return EXIT_OK if valid else EXIT_INVALID


def cmd_stats(args: argparse.Namespace) -> int:
    g = parse_graph(_read(args.graph))
    if args.measure == "treedepth":
        value, forest = treedepth_exact(g)
        witness = format_forest(forest.parent)
    elif args.measure == "chi":
        result = chi_exact(g)
        value, witness = result.value, format_coloring(result.witness)
    elif args.measure == "chi-lid":
        result = chi_lid_exact(g)
        value, witness = result.value, format_coloring(result.witness)
    else:
        result = chi_td_p_exact(g, 3)
        value, witness = result.value, format_coloring(result.witness.assignment)
    print(value)
    if args.out:
        _emit(witness, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lidcolor", description="Locally identifying colorings.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a graph from a named family")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="check a coloring file against a graph file")
    p.add_argument("graph")
    p.add_argument("coloring")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("color", help="lid-color a graph")
    p.add_argument("graph")
    p.add_argument("--strategy", choices=STRATEGIES, default="treedepth")
    p.add_argument("--forest", help="elimination forest file (treedepth strategy)")
    p.add_argument("--classes", help="low tree-depth class file (product strategy)")
    p.add_argument("--layer-colorer", default="auto", choices=("auto", "brute", "treedepth", "recursive"))
    p.add_argument("--proper-colorer", default="exact", choices=("exact", "dsatur"))
    p.add_argument("--minor-bound", type=int)
    p.add_argument("--max-colors", type=int)
    p.add_argument("--debug-trace", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--record", help="append the JSON run record here instead of stderr")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("stats", help="exact graph parameters with witnesses")
    p.add_argument("graph")
    p.add_argument("measure", choices=MEASURES)
    p.add_argument("--out", help="witness file")
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except LidError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
