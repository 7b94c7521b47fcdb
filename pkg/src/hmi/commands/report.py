"""``hmi report``: run claims inline and write a JSON, CSV or Markdown report."""

import argparse
from pathlib import Path

from hmi.commands.output import check_writable, render, write_text
from hmi.services.verifier.suite import run_suite


class _Once(argparse.Action):
    """Store a value, rejecting a second occurrence of the flag."""

    def __call__(self, parser, namespace, values, option_string=None):
        if getattr(namespace, f"_{self.dest}_seen", False):
            parser.error(f"{option_string} given more than once")
        setattr(namespace, f"_{self.dest}_seen", True)
        setattr(namespace, self.dest, values)


def add_parser(subparsers) -> argparse.ArgumentParser:
    p = subparsers.add_parser("report", help="write a claim report")
    p.add_argument(
        "--format", action=_Once, choices=("json", "csv", "md"), default="json",
        help="output format",
    )
    p.add_argument("-o", "--out", type=Path, required=True, help="output file")
    select = p.add_mutually_exclusive_group()
    select.add_argument("--claims", nargs="*", default=None, help="claim ids")
    select.add_argument("--all", action="store_true", help="every registry claim (default)")
    p.set_defaults(run=run)
    return p


def run(args: argparse.Namespace) -> int:
    check_writable(args.out)
    ids = args.claims if args.claims is not None else "all"
    suite = run_suite(ids, settings=args.settings)
    text = render(suite.claims, args.format)
    write_text(args.out, text)
    print(f"wrote {len(suite.claims)} claim(s) to {args.out}")
    return 0 if suite.status == "pass" else 1
