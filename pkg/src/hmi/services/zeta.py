"""Dirichlet eta and Riemann zeta with derivatives up to order 3 for s > 0.

eta is summed with the Cohen-Rodriguez Villegas-Zagier acceleration, starting
the accelerated tail at n=3 and adding the first two terms exactly. zeta
follows from eta / (1 - 2^(1-s)) by the quotient rule, except inside the
Laurent disc around s=1 where the Stieltjes expansion takes over.
"""

import logging
import math
from functools import lru_cache
from typing import List, Optional, Tuple

import numpy as np

from hmi.errors import DomainError, PoleError, UnsupportedOrder
from hmi.schemas.common import EvalResult
from hmi.schemas.kernels import LaurentConfig
from hmi.services.laurent import MAX_ORDER, default_laurent_config, laurent_zeta_array

logger = logging.getLogger(__name__)

CVZ_TERMS = 50
HEAD = 2  # n = 1, 2 added exactly
LOG2 = math.log(2.0)
_EPS = np.finfo(float).eps


@lru_cache(maxsize=4)
def cvz_weights(n: int = CVZ_TERMS) -> np.ndarray:
    """Weights w_k with sum_k w_k a_k ~ sum_k (-1)^k a_k."""
    d = (3.0 + math.sqrt(8.0)) ** n
    d = (d + 1.0 / d) / 2.0
    b = -1.0
    c = -d
    out = np.empty(n)
    for k in range(n):
        c = b - c
        out[k] = c
        b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0))
    return out / d


def _check_order(k: int) -> None:
    if k < 0 or k > MAX_ORDER:
        raise UnsupportedOrder(
            f"derivative order {k} not in 0..{MAX_ORDER}", {"k": k, "max": MAX_ORDER}
        )


def _as_positive(s, name: str) -> np.ndarray:
    arr = np.asarray(s, dtype=float)
    ok = np.isfinite(arr) & (arr > 0.0)
    if not np.all(ok):
        raise DomainError(
            f"{name} requires s > 0", {"function": name, "s": float(arr[~ok].flat[0])}
        )
    return arr


def eta_family_array(s, k_max: int = 0) -> Tuple[List[np.ndarray], List[np.ndarray]]:
    """eta, eta', ..., eta^(k_max) on an array of s > 0, with error estimates."""
    _check_order(k_max)
    s = _as_positive(s, "eta")
    weights = cvz_weights()
    log_n = np.log(np.arange(HEAD + 1, HEAD + 1 + weights.size, dtype=float))
    base = np.exp(-s[..., None] * log_n)  # n^-s for n >= 3
    two = np.exp(-s * LOG2)

    # 4/(3+sqrt 8)^N bounds the acceleration error for totally monotone tails.
    accel = 4.0 * (3.0 + math.sqrt(8.0)) ** (-weights.size)
    values, errors = [], []
    log_pow = np.ones_like(log_n)
    for k in range(k_max + 1):
        terms = base * log_pow
        tail = np.sum(terms * weights, axis=-1)
        head = (1.0 if k == 0 else 0.0) - LOG2**k * two
        sign = -1.0 if k % 2 else 1.0
        values.append(sign * (head + tail))
        scale = np.sum(np.abs(terms * weights), axis=-1) + np.abs(head)
        errors.append(8.0 * _EPS * scale + accel * np.max(np.abs(terms), axis=-1))
        log_pow = log_pow * log_n
    return values, errors


def eta_array(s, k: int = 0) -> np.ndarray:
    return eta_family_array(s, k)[0][k]


def eta_family(s: float, k_max: int = 3) -> List[EvalResult]:
    values, errors = eta_family_array(np.asarray([s], dtype=float), k_max)
    return [EvalResult(value=float(v[0]), est_error=float(e[0])) for v, e in zip(values, errors)]


def eta(s: float, k: int = 0) -> EvalResult:
    """eta^(k)(s), k in 0..3, s > 0."""
    _check_order(k)
    return eta_family(s, k)[k]


# ----------------------------------------------------------------------
# zeta
# ----------------------------------------------------------------------


def _denominator(s: np.ndarray, k_max: int) -> List[np.ndarray]:
    """1 - 2^(1-s) and its derivatives."""
    p = np.exp((1.0 - s) * LOG2)
    out = [1.0 - p]
    for j in range(1, k_max + 1):
        # d^j/ds^j [-2^(1-s)] = (-1)^(j+1) (log 2)^j 2^(1-s)
        out.append((-1.0) ** (j + 1) * LOG2**j * p)
    return out


def _zeta_from_eta(s: np.ndarray, k_max: int):
    eta_v, eta_e = eta_family_array(s, k_max)
    den = _denominator(s, k_max)
    zv: List[np.ndarray] = []
    ze: List[np.ndarray] = []
    for k in range(k_max + 1):
        num = eta_v[k].copy()
        err = eta_e[k].copy()
        for i in range(k):
            c = math.comb(k, i)
            num -= c * zv[i] * den[k - i]
            err += c * (ze[i] * np.abs(den[k - i]) + _EPS * np.abs(zv[i] * den[k - i]))
        value = num / den[0]
        zv.append(value)
        ze.append(err / np.abs(den[0]) + 2 * _EPS * np.abs(value))
    return zv, ze


def zeta_family_array(
    s, k_max: int = 0, cfg: Optional[LaurentConfig] = None
) -> Tuple[List[np.ndarray], List[np.ndarray]]:
    """zeta..zeta^(k_max) on an array, switching paths at the Laurent radius."""
    _check_order(k_max)
    cfg = cfg or default_laurent_config()
    s = _as_positive(s, "zeta")
    near_pole = np.abs(s - 1.0) < cfg.pole_guard
    if np.any(near_pole):
        raise PoleError(
            "zeta has a pole at s=1",
            {"s": float(s[near_pole].flat[0]), "guard": cfg.pole_guard},
        )
    inside = np.abs(s - 1.0) < cfg.radius
    values = [np.empty_like(s) for _ in range(k_max + 1)]
    errors = [np.empty_like(s) for _ in range(k_max + 1)]
    if np.any(~inside):
        zv, ze = _zeta_from_eta(s[~inside], k_max)
        for k in range(k_max + 1):
            values[k][~inside] = zv[k]
            errors[k][~inside] = ze[k]
    if np.any(inside):
        for k in range(k_max + 1):
            v, e = laurent_zeta_array(s[inside], k, cfg)
            values[k][inside] = v
            errors[k][inside] = e
    return values, errors


def zeta_array(s, k: int = 0) -> np.ndarray:
    return zeta_family_array(s, k)[0][k]


def zeta_eta_path(s: float, k: int = 0) -> EvalResult:
    """zeta^(k)(s) through the eta quotient regardless of the Laurent radius."""
    _check_order(k)
    arr = _as_positive(np.asarray([s], dtype=float), "zeta")
    if abs(s - 1.0) < default_laurent_config().pole_guard:
        raise PoleError("zeta has a pole at s=1", {"s": s})
    zv, ze = _zeta_from_eta(arr, k)
    return EvalResult(value=float(zv[k][0]), est_error=float(ze[k][0]))


def zeta_family(s: float, k_max: int = 3) -> List[EvalResult]:
    values, errors = zeta_family_array(np.asarray([s], dtype=float), k_max)
    return [EvalResult(value=float(v[0]), est_error=float(e[0])) for v, e in zip(values, errors)]


def zeta(s: float, k: int = 0) -> EvalResult:
    """zeta^(k)(s), k in 0..3, s > 0 and s != 1."""
    _check_order(k)
    return zeta_family(s, k)[k]


# ----------------------------------------------------------------------
# Lavrik sandwich on (0, 1)
# ----------------------------------------------------------------------


def zeta_sandwich(n: int, x: float) -> Tuple[float, float]:
    """Bounds (lo, hi) for (-1)^n zeta^(n)(x), 0 < x < 1."""
    if n < 0 or n > 4:
        raise UnsupportedOrder(f"sandwich order {n} not in 0..4", {"n": n, "max": 4})
    if not 0.0 < x < 1.0:
        raise DomainError("zeta_sandwich requires 0 < x < 1", {"x": x})
    f = math.factorial(n)
    sgn = (-1.0) ** n
    near = f / (1.0 - x) ** (n + 1)
    far = f / (1.0 + x) ** (n + 1)
    return -sgn * near - far, far - sgn * near
