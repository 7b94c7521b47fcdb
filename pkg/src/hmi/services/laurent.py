"""Laurent expansion of zeta about s=1 in the Stieltjes constants.

zeta(s) = 1/(s-1) + sum_n gamma_n/n! (1-s)^n, differentiated termwise. The
remainder after truncation is bounded with the Stieltjes bound families,
which give |gamma_n|/(n-1)! <= 4/pi^n for every n >= 1.
"""

import math
from typing import Optional

import numpy as np

from hmi.config import get_settings
from hmi.errors import OutOfDisc, PoleError, UnsupportedOrder
from hmi.schemas.common import EvalResult
from hmi.schemas.kernels import LaurentConfig, StieltjesTable
from hmi.services.stieltjes import require_constants, stieltjes_table

MAX_ORDER = 3
_EPS = np.finfo(float).eps


def laurent_tail_bound(r: float, k: int, terms: int) -> float:
    """Bound on the k-th derivative remainder beyond index terms + k.

    Term n of the differentiated regular part is at most
    4 (n-1)!/(n-k)! r^(n-k) / pi^n; consecutive terms shrink by the factor
    n/(n-k+1) * r/pi, which is largest at the first omitted index.
    """
    if r <= 0.0:
        return 0.0
    first = terms + k + 1
    q = r / math.pi
    ratio = q * max(1.0, first / (first - k + 1))
    if ratio >= 1.0:
        return math.inf
    lead = (
        4.0
        * math.factorial(first - 1)
        / math.factorial(first - k)
        * r ** (first - k)
        / math.pi**first
    )
    return lead / (1.0 - ratio)


def _check_order(k: int) -> None:
    if k < 0 or k > MAX_ORDER:
        raise UnsupportedOrder(
            f"derivative order {k} not in 0..{MAX_ORDER}", {"k": k, "max": MAX_ORDER}
        )


def regular_part_array(
    s, k: int, cfg: LaurentConfig, table: Optional[StieltjesTable] = None
):
    """k-th derivative of sum_n gamma_n/n! (1-s)^n and its error bound.

    Finite at s=1; callers enforce the disc.
    """
    _check_order(k)
    table = table or stieltjes_table()
    top = cfg.terms + k
    require_constants(table, top)
    u = 1.0 - np.asarray(s, dtype=float)

    # (-1)^k sum_{n=k}^{top} gamma_n/(n-k)! u^(n-k), Horner from the top.
    acc = np.zeros_like(u)
    mag = np.zeros_like(u)
    absu = np.abs(u)
    for n in range(top, k - 1, -1):
        c = table.gamma[n] / math.factorial(n - k)
        acc = acc * u + c
        mag = mag * absu + abs(c) + table.prec[n] / math.factorial(n - k)
    sign = -1.0 if k % 2 else 1.0
    tail = np.vectorize(lambda r: laurent_tail_bound(r, k, cfg.terms))(absu)
    err = tail + 4 * (top - k + 2) * _EPS * mag
    return sign * acc, err


def laurent_zeta_array(
    s, k: int, cfg: LaurentConfig, table: Optional[StieltjesTable] = None
):
    """zeta^(k) via the Laurent series; pole term plus regular part."""
    s = np.asarray(s, dtype=float)
    d = s - 1.0
    if np.any(np.abs(d) < cfg.pole_guard):
        bad = float(s[np.abs(d) < cfg.pole_guard][0])
        raise PoleError("zeta has a pole at s=1", {"s": bad, "guard": cfg.pole_guard})
    reg, err = regular_part_array(s, k, cfg, table)
    pole = (-1.0) ** k * math.factorial(k) / d ** (k + 1)
    err = err + 2 * _EPS * np.abs(pole)
    return pole + reg, err


def _check_disc(s: float, cfg: LaurentConfig, allow_center: bool) -> None:
    dist = abs(s - 1.0)
    if dist >= cfg.radius:
        raise OutOfDisc(
            f"|s-1| = {dist:.6g} outside the Laurent disc of radius {cfg.radius}",
            {"s": s, "radius": cfg.radius},
        )
    if not allow_center and dist < cfg.pole_guard:
        raise PoleError("zeta has a pole at s=1", {"s": s, "guard": cfg.pole_guard})


def laurent_zeta(
    s: float, k: int = 0, cfg: Optional[LaurentConfig] = None
) -> EvalResult:
    """zeta^(k)(s) for 0 < |s-1| < cfg.radius from the Laurent series."""
    cfg = cfg or default_laurent_config()
    _check_order(k)
    _check_disc(s, cfg, allow_center=False)
    value, err = laurent_zeta_array(np.asarray([s]), k, cfg)
    return EvalResult(value=float(value[0]), est_error=float(err[0]))


def laurent_regular(
    s: float, k: int = 0, cfg: Optional[LaurentConfig] = None
) -> EvalResult:
    """k-th derivative of zeta(s) - 1/(s-1); defined at s=1 itself."""
    cfg = cfg or default_laurent_config()
    _check_order(k)
    _check_disc(s, cfg, allow_center=True)
    value, err = regular_part_array(np.asarray([s]), k, cfg)
    return EvalResult(value=float(value[0]), est_error=float(err[0]))


def default_laurent_config() -> LaurentConfig:
    settings = get_settings()
    return LaurentConfig(
        radius=settings.laurent_radius,
        terms=settings.laurent_terms,
        pole_guard=settings.pole_guard,
    )
