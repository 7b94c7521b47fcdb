"""``hmi eval``: a kernel or catalog expression at one point."""

import argparse
import math
from typing import Dict, List, Optional

from hmi.commands.output import fmt
from hmi.errors import DomainError
from hmi.schemas.common import EvalResult
from hmi.services.digamma import digamma, digamma2, harmonic_mean, trigamma
from hmi.services.laurent import laurent_zeta
from hmi.services.verifier.catalog import ExpressionCatalog, get_entry
from hmi.services.zeta import eta, zeta

KERNELS = ("digamma", "trigamma", "digamma2", "eta", "zeta", "laurent_zeta", "harmonic_mean")


def add_parser(subparsers) -> argparse.ArgumentParser:
    p = subparsers.add_parser("eval", help="evaluate a kernel or catalog expression")
    p.add_argument("expr", help=f"one of {', '.join(KERNELS)} or a catalog expression")
    p.add_argument("x", type=float, nargs="+", help="point (two values for harmonic_mean)")
    p.add_argument("--deriv", type=int, default=0, help="derivative order for eta/zeta")
    p.add_argument("--param", default=None, help="comma-separated parameters, e.g. 1,2")
    p.set_defaults(run=run)
    return p


def _kernel(name: str, xs: List[float], k: int) -> EvalResult:
    if name == "harmonic_mean":
        if len(xs) != 2:
            raise DomainError("harmonic_mean takes two values", {"given": len(xs)})
        return EvalResult(value=harmonic_mean(xs[0], xs[1]), est_error=0.0)
    if len(xs) != 1:
        raise DomainError(f"{name} takes one point", {"given": len(xs)})
    x = xs[0]
    if name in ("digamma", "trigamma", "digamma2"):
        if k:
            raise DomainError(f"{name} has no --deriv option; use trigamma/digamma2", {"k": k})
        return {"digamma": digamma, "trigamma": trigamma, "digamma2": digamma2}[name](x)
    if name == "eta":
        return eta(x, k)
    if name == "zeta":
        return zeta(x, k)
    return laurent_zeta(x, k)


def _params(expr: str, raw: Optional[str]) -> Dict[str, float]:
    names = get_entry(expr).params
    if raw is None:
        return {}
    values = [float(v) for v in raw.split(",") if v.strip()]
    if len(values) != len(names):
        raise DomainError(
            f"{expr} takes {len(names)} parameter(s) ({', '.join(names) or 'none'})",
            {"expression": expr, "given": len(values)},
        )
    return dict(zip(names, values))


def _error_column(err: float) -> str:
    return "n/a" if math.isnan(err) else fmt(err)


def run(args: argparse.Namespace) -> int:
    if args.expr in KERNELS:
        result = _kernel(args.expr, args.x, args.deriv)
        print(f"{fmt(result.value)} {_error_column(result.est_error)}")
        return 0
    if len(args.x) != 1:
        raise DomainError(f"{args.expr} takes one point", {"given": len(args.x)})
    params = _params(args.expr, args.param)
    value = ExpressionCatalog().aux_eval(args.expr, args.x[0], params)
    # catalog compositions carry no error estimate
    print(f"{fmt(value)} n/a")
    return 0
