"""Command-line entry point."""

import argparse
import logging
import os
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from hmi import __version__
from hmi.commands import evaluate, report, stieltjes, sturm, verify
from hmi.config import CONFIG_FILE_ENV, get_settings, load_settings
from hmi.errors import HmiError
from hmi.services.stieltjes import reset_stieltjes_table

logger = logging.getLogger("hmi")

COMMANDS = (evaluate, verify, sturm, stieltjes, report)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hmi",
        description="Special functions on the real axis and a verifier for "
        "digamma and zeta harmonic-mean inequalities.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", type=Path, default=None, help="key=value settings file")
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug"
    )
    parser.add_argument("--workers", type=int, default=None, help="grid evaluation threads")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for command in COMMANDS:
        command.add_parser(sub).set_defaults(parser=parser)
    return parser


def _configure_logging(level_name: str, verbose: int) -> None:
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = getattr(logging, level_name.upper(), logging.WARNING)
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    if args.config is not None and not args.config.is_file():
        print(f"error: config file {args.config} not found", file=sys.stderr)
        return 2

    # kernels read get_settings(), so the config file is made process-wide
    previous = os.environ.get(CONFIG_FILE_ENV)
    if args.config is not None:
        os.environ[CONFIG_FILE_ENV] = str(args.config)
        get_settings.cache_clear()
        reset_stieltjes_table()
    try:
        try:
            settings = load_settings(args.config, workers=args.workers)
        except ValidationError as exc:
            first = exc.errors()[0]
            where = ".".join(str(part) for part in first["loc"])
            print(f"error [config]: {where}: {first['msg']}", file=sys.stderr)
            return 2
        _configure_logging(settings.log_level, args.verbose)
        args.settings = settings
        logger.debug("running %s with %s", args.command, settings.model_dump())
        return args.run(args)
    except HmiError as exc:
        print(f"error [{exc.code}]: {exc.message}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        return int(exc.code or 0)
    finally:
        if args.config is not None:
            if previous is None:
                os.environ.pop(CONFIG_FILE_ENV, None)
            else:
                os.environ[CONFIG_FILE_ENV] = previous
            get_settings.cache_clear()
            reset_stieltjes_table()


if __name__ == "__main__":
    sys.exit(main())
