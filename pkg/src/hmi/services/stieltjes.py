"""Stieltjes constants: high-precision oracles, the cached table and bounds.

The table is produced once by the Euler-Maclaurin limit oracle (or read back
from the cache file) and is immutable afterwards. A second, independent
estimator fits the Laurent expansion to high-precision eta values and is only
used for cross-checking.
"""

import logging
import math
import threading
import time
from collections import defaultdict
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath as mp

from hmi.clients.stieltjes_cache import StieltjesCache
from hmi.config import get_settings
from hmi.errors import MissingConstant, UnsupportedIndex
from hmi.schemas.kernels import StieltjesTable

logger = logging.getLogger(__name__)

EM_BERNOULLI_TERMS = 5

# d/dt [L^a t^-b] with L = log t, as integer coefficients keyed by (a, b)
_Monomials = Dict[Tuple[int, int], int]


def _differentiate(poly: _Monomials) -> _Monomials:
    out: _Monomials = defaultdict(int)
    for (a, b), c in poly.items():
        if a:
            out[(a - 1, b + 1)] += c * a
        out[(a, b + 1)] -= c * b
    return {key: c for key, c in out.items() if c}


def _odd_derivatives(n: int, count: int) -> List[_Monomials]:
    """f', f''', ..., f^(2*count-1) for f(t) = (log t)^n / t."""
    poly: _Monomials = {(n, 1): 1}
    out = []
    for order in range(1, 2 * count):
        poly = _differentiate(poly)
        if order % 2 == 1:
            out.append(poly)
    return out


def _evaluate(poly: _Monomials, log_m, m):
    return mp.fsum(c * log_m**a / m**b for (a, b), c in poly.items())


def _em_estimate(n: int, m: int, partial, derivs: List[_Monomials], bern) -> mp.mpf:
    log_m = mp.log(m)
    f_m = log_m**n / m
    correction = mp.fsum(
        bern[j] / mp.factorial(2 * j + 2) * _evaluate(derivs[j], log_m, m)
        for j in range(len(derivs))
    )
    return partial - log_m ** (n + 1) / (n + 1) - f_m / 2 - correction


def stieltjes_oracle(
    max_index: int = 16,
    levels: Sequence[int] = (1000, 3000, 10000),
    dps: int = 50,
) -> StieltjesTable:
    """Limit formula with Euler-Maclaurin corrections at several cut-offs.

    One cumulative pass over k = 1..max(levels) serves every level. The value
    is the last level's estimate; the error is its distance to the previous
    level, floored at the working precision.
    """
    levels = sorted(set(int(m) for m in levels))
    if len(levels) < 2:
        raise ValueError("stieltjes oracle needs at least two levels")
    started = time.perf_counter()
    with mp.workdps(dps):
        bern = [mp.bernoulli(2 * j) for j in range(1, EM_BERNOULLI_TERMS + 1)]
        derivs = [
            _odd_derivatives(n, EM_BERNOULLI_TERMS) for n in range(max_index + 1)
        ]
        partial = [mp.mpf(0)] * (max_index + 1)
        estimates: Dict[int, List[mp.mpf]] = {}
        wanted = set(levels)
        for k in range(1, levels[-1] + 1):
            log_k = mp.log(k)
            term = mp.mpf(1) / k
            for n in range(max_index + 1):
                partial[n] += term
                term *= log_k
            if k in wanted:
                estimates[k] = [
                    _em_estimate(n, k, partial[n], derivs[n], bern)
                    for n in range(max_index + 1)
                ]
                logger.debug("stieltjes oracle level m=%d done", k)

        last, prev = estimates[levels[-1]], estimates[levels[-2]]
        floor = mp.mpf(10) ** (-(dps - 10))
        gamma = [float(v) for v in last]
        prec = [float(max(abs(a - b), floor)) for a, b in zip(last, prev)]
        digits = [mp.nstr(v, 40) for v in last]
    logger.info(
        "stieltjes oracle: %d constants at levels %s in %.2fs",
        max_index + 1,
        levels,
        time.perf_counter() - started,
    )
    return StieltjesTable(gamma=gamma, prec=prec, digits=digits)


def _chebyshev_points(count: int, radius: float) -> List[mp.mpf]:
    return [
        1 + radius * mp.cos(mp.pi * (j + mp.mpf(1) / 2) / count) for j in range(count)
    ]


def stieltjes_laurent_fit(
    points: int = 16, radius: float = 0.3, order: int = 10, dps: int = 40
) -> List[float]:
    """gamma_0..gamma_order by least squares on the Laurent expansion.

    zeta(s) - 1/(s-1) is sampled from the high-precision eta series at
    Chebyshev points around s=1 and fitted by a polynomial in (1-s).
    """
    if points <= order:
        raise ValueError("need more sample points than fitted coefficients")
    with mp.workdps(dps):
        nodes = _chebyshev_points(points, radius)
        rows = []
        rhs = []
        for s in nodes:
            zeta = mp.altzeta(s) / (1 - mp.power(2, 1 - s))
            rhs.append(zeta - 1 / (s - 1))
            u = 1 - s
            rows.append([u**n for n in range(order + 1)])
        coeffs, residual = mp.qr_solve(mp.matrix(rows), mp.matrix(rhs))
        logger.debug("laurent fit residual %s", mp.nstr(residual, 5))
        return [float(coeffs[n] * mp.factorial(n)) for n in range(order + 1)]


# ----------------------------------------------------------------------
# Cached table
# ----------------------------------------------------------------------


_table_lock = threading.Lock()
_table: Optional[StieltjesTable] = None


def _load_or_build(recompute: bool) -> StieltjesTable:
    settings = get_settings()
    cache: Optional[StieltjesCache] = None
    if settings.stieltjes_cache_path is not None:
        cache = StieltjesCache(settings.stieltjes_cache_path)
        if not recompute:
            table = cache.load()
            if table is not None and table.max_index >= settings.stieltjes_max_index:
                logger.info("stieltjes table loaded from %s", cache.path)
                return table
            logger.info("stieltjes cache miss at %s", cache.path)
    table = stieltjes_oracle(
        settings.stieltjes_max_index,
        settings.stieltjes_levels,
        settings.stieltjes_dps,
    )
    if cache is not None:
        cache.save(table)
    return table


def stieltjes_table(recompute: bool = False) -> StieltjesTable:
    """The process-wide Stieltjes table; ``recompute`` rebuilds and rewrites it."""
    global _table
    with _table_lock:
        if recompute or _table is None:
            _table = _load_or_build(recompute)
        return _table


def reset_stieltjes_table() -> None:
    global _table
    with _table_lock:
        _table = None


def stieltjes(n: int, table: Optional[StieltjesTable] = None) -> float:
    """gamma_n from the table."""
    table = table or stieltjes_table()
    if n < 0 or n > table.max_index:
        raise UnsupportedIndex(
            f"Stieltjes index {n} outside 0..{table.max_index}",
            {"n": n, "max_index": table.max_index},
        )
    return table.gamma[n]


def require_constants(table: StieltjesTable, highest: int) -> None:
    if table.max_index < highest:
        raise MissingConstant(
            f"Stieltjes table holds gamma_0..gamma_{table.max_index}, "
            f"gamma_{highest} is required",
            {"required": highest, "max_index": table.max_index},
        )


# ----------------------------------------------------------------------
# Bounds
# ----------------------------------------------------------------------


def stieltjes_bound(n: int) -> float:
    """4(2m-1)!/pi^(2m) for n = 2m, 2(2m)!/pi^(2m+1) for n = 2m+1."""
    if n < 1:
        raise UnsupportedIndex(
            "stieltjes_bound is undefined at index 0", {"n": n, "minimum": 1}
        )
    m, odd = divmod(n, 2)
    if odd:
        return 2.0 * math.factorial(2 * m) / math.pi ** (2 * m + 1)
    return 4.0 * math.factorial(2 * m - 1) / math.pi ** (2 * m)


def lavrik_bound(k: int) -> float:
    """k!/2^(k+1)."""
    if k < 1:
        raise UnsupportedIndex("lavrik_bound needs k >= 1", {"k": k, "minimum": 1})
    return math.factorial(k) / 2.0 ** (k + 1)


def table_bound_violations(table: StieltjesTable) -> List[Tuple[int, str, float]]:
    """(index, family, margin) for every stored index breaking a bound."""
    out = []
    for n in range(1, table.max_index + 1):
        value = abs(table.gamma[n]) + table.prec[n]
        for family, bound in (("factorial", stieltjes_bound(n)), ("lavrik", lavrik_bound(n))):
            if value > bound:
                out.append((n, family, bound - value))
    return out
