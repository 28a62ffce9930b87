"""``maxclass`` command line.

Exit status: 0 when every executed check passes, 1 when any check fails,
2 on bad input (syntax, inconsistent relations, unknown builtin).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import oracle, report
from .constructions import resolve
from .pc import PresentationError

COMMANDS = ("analyze", "verify-theorem-a", "verify-lemmas", "oracle-crosscheck")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="maxclass", description="p-groups of maximal class given by pc presentations")
    ap.add_argument("command", choices=COMMANDS)
    src = ap.add_mutually_exclusive_group()
    src.add_argument("--builtin", metavar="NAME[:P]",
                     help="example1, extraspecial[:p], wreath[:p], cyclic_major_center[:p] or a corpus name")
    src.add_argument("--file", metavar="PATH", help="presentation file")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    ap.add_argument("--budget-elems", type=int, metavar="N", help="element enumeration budget for the oracle")
    ap.add_argument("--out", metavar="PATH", help="write the report here instead of standard output")
    return ap


def run(args) -> tuple:
    """Returns ``(report dict, exit status)``."""
    saved = oracle.BUDGETS.elements
    if args.budget_elems is not None:
        oracle.BUDGETS.elements = args.budget_elems
    try:
        rep = _build(args)
    finally:
        oracle.BUDGETS.elements = saved
    return rep, 1 if report.failed(rep) else 0


def _build(args) -> dict:
    if args.command == "verify-theorem-a":
        rep = report.theorem_a_report()
    else:
        if args.builtin is None and args.file is None:
            raise PresentationError(f"{args.command} needs --builtin or --file")
        spec = resolve(builtin=args.builtin, file=args.file)
        build = {
            "analyze": report.analyze_report,
            "verify-lemmas": report.lemmas_report,
            "oracle-crosscheck": report.oracle_report,
        }[args.command]
        rep = build(spec.resolved, spec.source)
    return rep


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        rep, status = run(args)
    except (PresentationError, OSError) as e:
        print(f"maxclass: error: {e}", file=sys.stderr)
        return 2
    text = report.to_json(rep) if args.format == "json" else report.to_text(rep)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
