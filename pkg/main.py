"""
Modular Coincidence Analyzer: Entry Point

Sub-commands:
- analyze SOURCE:  validate a system, compute L' and Ψ_0, decide modular
                   coincidence, optionally write DOT graphs, run the direct
                   oracle or collar a nonadmissible system
- census:          exhaustive minimal-k census of small substitutions
- list-builtins:   the built-in example systems

SOURCE is a description file or builtin:NAME (builtin:worst:5).

Exit codes: 0 analysis completed (whatever the verdict), 2 parse error,
3 invalid input, 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import asyncio
import sys
from pathlib import Path
from typing import Sequence

from coincidence.census import run_census
from parsing.builtins import list_builtins
from reporting.analyzer import AUTO_RADIUS, analyze, load_source, options_from_document
from reporting.dot import emit_dot
from reporting.report import FORMATS, emit_census, emit_report
from utils.errors import ModcoError
from utils.logger import get_logger, set_console_level

log = get_logger("main")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modco",
        description="Modular coincidence analysis of lattice substitution systems.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    analyze_cmd = commands.add_parser("analyze", help="analyze one system")
    analyze_cmd.add_argument("source", help="description file or builtin:NAME")
    analyze_cmd.add_argument("--dot", type=Path, help="write the coincidence graph as DOT")
    analyze_cmd.add_argument("--pair-graph", action="store_true", help="build the pair coincidence graph")
    analyze_cmd.add_argument(
        "--substitution-graph", action="store_true", help="build the substitution graph"
    )
    analyze_cmd.add_argument("--direct-check", type=int, metavar="K", help="brute-force check of Φ^K")
    analyze_cmd.add_argument(
        "--collar",
        type=int,
        nargs="?",
        const=AUTO_RADIUS,
        metavar="R",
        help="collar at radius R (scan 1, 2, 4, ... when R is omitted)",
    )
    analyze_cmd.add_argument("--max-depth", type=int, metavar="N", help="patch depth cap")
    analyze_cmd.add_argument("--format", choices=FORMATS, default="text")

    census_cmd = commands.add_parser("census", help="minimal-k census of small substitutions")
    census_cmd.add_argument(
        "--m", type=int, required=True,
        help="alphabet size (m=6 at q=2 enumerates 237600 candidates; raise MODCO_CENSUS_MAX_CANDIDATES beyond that)",
    )
    census_cmd.add_argument("--q", type=int, default=2, help="word length")
    census_cmd.add_argument("--workers", type=int, help="worker processes")
    census_cmd.add_argument("--format", choices=FORMATS, default="text")

    commands.add_parser("list-builtins", help="list the built-in systems")
    return parser


def _write_graphs(path: Path, result) -> None:
    if result.graph is not None:
        path.write_text(emit_dot(result.graph), encoding="utf-8")
        log.info("Wrote %s", path)
    if result.pair_graph is not None:
        pair_path = path.with_suffix(".pair.dot")
        pair_path.write_text(emit_dot(result.pair_graph), encoding="utf-8")
        log.info("Wrote %s", pair_path)
    if result.substitution_graph is not None:
        sub_path = path.with_suffix(".subst.dot")
        sub_path.write_text(emit_dot(result.substitution_graph), encoding="utf-8")
        log.info("Wrote %s", sub_path)


def run(args: argparse.Namespace) -> int:
    if args.command == "list-builtins":
        for name, description in list_builtins():
            print(f"{name:28s} {description}")
        return 0

    if args.command == "census":
        result = asyncio.run(run_census(args.m, args.q, workers=args.workers))
        sys.stdout.write(emit_census(result, args.format))
        return 0

    doc = load_source(args.source)
    options = options_from_document(
        doc,
        pair_graph=args.pair_graph or None,
        substitution_graph=args.substitution_graph or None,
        direct_check=args.direct_check,
        collar=args.collar,
        max_depth=args.max_depth,
    )
    result = analyze(doc, args.source, options)
    if args.dot is not None:
        _write_graphs(args.dot, result)
    sys.stdout.write(emit_report(result.report, args.format))
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.verbose:
        set_console_level("DEBUG")
    try:
        return run(args)
    except ModcoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
