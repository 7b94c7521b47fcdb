"""``hmi verify``: run claims and print one line per claim."""

import argparse
from pathlib import Path

from hmi.commands.output import DISCLAIMER, check_writable, dumps, write_text
from hmi.services.verifier.suite import run_suite


def grid_size(text: str) -> int:
    n = int(text)
    if n < 3:
        raise argparse.ArgumentTypeError(f"grid size must be at least 3, got {n}")
    return n


def add_parser(subparsers) -> argparse.ArgumentParser:
    p = subparsers.add_parser("verify", help="verify registry claims")
    p.add_argument("claims", nargs="*", help="claim ids, e.g. D1 Z2")
    p.add_argument("--all", action="store_true", help="run every registry claim")
    p.add_argument("--grid-n", type=grid_size, default=None, help="points per scan interval (>= 3)")
    p.add_argument("--json", type=Path, default=None, help="also write the suite report")
    p.set_defaults(run=run)
    return p


def run(args: argparse.Namespace) -> int:
    if args.all and args.claims:
        args.parser.error("give claim ids or --all, not both")
    if not args.all and not args.claims:
        args.parser.error("give claim ids or --all")
    settings = args.settings
    if args.grid_n is not None:
        settings = settings.model_copy(update={"grid_n": args.grid_n})
    if args.json is not None:
        check_writable(args.json)

    suite = run_suite("all" if args.all else args.claims, settings=settings)

    for r in suite.claims:
        argmin = "-" if r.argmin_x is None else f"{r.argmin_x:.6g}"
        print(f"{r.claim_id:<5} {r.status:<12} {r.kind:<12} margin={r.min_margin:.3e} x={argmin}")
    print(
        f"{suite.status}: {suite.passed}/{suite.total} passed, "
        f"{suite.failed} failed, {suite.inconclusive} inconclusive ({DISCLAIMER})"
    )
    if args.json is not None:
        write_text(args.json, dumps(suite.model_dump()))
    return 0 if suite.status == "pass" else 1
