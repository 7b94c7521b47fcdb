"""``hmi stieltjes``: table entries against both bound families."""

import argparse

from hmi.commands.output import fmt
from hmi.services.stieltjes import lavrik_bound, stieltjes, stieltjes_bound, stieltjes_table


def add_parser(subparsers) -> argparse.ArgumentParser:
    p = subparsers.add_parser("stieltjes", help="show Stieltjes constants and bounds")
    p.add_argument("n", type=int, nargs="?", default=None, help="index")
    p.add_argument("--all", action="store_true", help="print every stored index")
    p.add_argument("--recompute", action="store_true", help="rebuild and rewrite the cache")
    p.set_defaults(run=run)
    return p


def _row(n: int, table) -> str:
    value = stieltjes(n, table)
    err = table.prec[n]
    if n == 0:
        bounds = "factorial=n/a lavrik=n/a"
    else:
        cells = []
        for family, bound in (("factorial", stieltjes_bound(n)), ("lavrik", lavrik_bound(n))):
            verdict = "PASS" if abs(value) + err <= bound else "FAIL"
            cells.append(f"{family}={bound:.6g} {verdict}")
        bounds = " ".join(cells)
    return f"{n:>3} {fmt(value)} err={err:.1e} {bounds}"


def run(args: argparse.Namespace) -> int:
    if args.all == (args.n is not None):
        args.parser.error("give an index or --all")
    table = stieltjes_table(recompute=args.recompute)
    indices = range(table.max_index + 1) if args.all else [args.n]
    rows = [_row(n, table) for n in indices]
    print("\n".join(rows))
    return 0
