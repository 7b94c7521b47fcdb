"""Digamma, trigamma and psi'' on the positive real axis.

Arguments below ``SHIFT_TO`` are pushed up with psi(x) = psi(x+1) - 1/x, then
the Bernoulli asymptotic expansion is summed. All kernels are vectorised over
numpy arrays; the scalar entry points wrap the array path and attach an
absolute-error estimate.
"""

import logging
import math
from functools import lru_cache
from typing import Tuple

import numpy as np
from scipy.optimize import bisect
from scipy.special import bernoulli

from hmi.errors import DomainError, HarmonicMeanPole
from hmi.schemas.common import EvalResult
from hmi.schemas.kernels import DigammaZero

logger = logging.getLogger(__name__)

SHIFT_TO = 8.0
ASYMPTOTIC_TERMS = 8
EULER_GAMMA = 0.57721566490153286061
_EPS = np.finfo(float).eps

# B_2, B_4, ..., B_16
_B2J = np.asarray(bernoulli(2 * ASYMPTOTIC_TERMS)[2::2], dtype=float)
_B_NEXT = float(bernoulli(2 * ASYMPTOTIC_TERMS + 2)[-1])


def _as_positive_array(x, name: str) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
        bad = arr[~(np.isfinite(arr) & (arr > 0.0))]
        raise DomainError(
            f"{name} requires x > 0",
            {"function": name, "x": float(np.atleast_1d(bad)[0])},
        )
    return arr


def psi_family_array(
    x, order: int = 2
) -> Tuple[Tuple[np.ndarray, ...], Tuple[np.ndarray, ...]]:
    """psi, psi', psi'' (up to ``order``) and their error estimates.

    Returns ``(values, errors)``, each a tuple of ``order + 1`` arrays shaped
    like ``x``.
    """
    x = _as_positive_array(x, "digamma")
    shifts = np.maximum(np.ceil(SHIFT_TO - x), 0.0).astype(int)
    y = x + shifts
    max_shift = int(shifts.max(initial=0))

    # Recurrence sums, accumulated only while i < shift for each element.
    rec = [np.zeros_like(x) for _ in range(3)]
    for i in range(max_shift):
        active = i < shifts
        t = np.where(active, 1.0 / (x + i), 0.0)
        rec[0] += t
        rec[1] += t * t
        rec[2] += t * t * t

    inv = 1.0 / y
    inv2 = inv * inv
    j = np.arange(1, ASYMPTOTIC_TERMS + 1)
    powers = inv2[..., None] ** j  # y^{-2j}

    asym0 = np.log(y) - 0.5 * inv - np.sum(_B2J / (2 * j) * powers, axis=-1)
    asym1 = inv + 0.5 * inv2 + np.sum(_B2J * powers, axis=-1) * inv
    asym2 = -inv2 - inv2 * inv - np.sum((2 * j + 1) * _B2J * powers, axis=-1) * inv2

    big_j = ASYMPTOTIC_TERMS + 1
    tail = abs(_B_NEXT) * inv2**big_j
    count = (shifts + ASYMPTOTIC_TERMS + 2) * _EPS

    values = (asym0 - rec[0], asym1 + rec[1], asym2 - 2.0 * rec[2])
    errors = (
        tail / (2 * big_j) + count * (np.abs(asym0) + rec[0]),
        tail * inv + count * (np.abs(asym1) + rec[1]),
        (2 * big_j + 1) * tail * inv2 + count * (np.abs(asym2) + 2.0 * rec[2]),
    )
    return values[: order + 1], errors[: order + 1]


def psi_array(x) -> np.ndarray:
    return psi_family_array(x, 0)[0][0]


def psi1_array(x) -> np.ndarray:
    return psi_family_array(x, 1)[0][1]


def psi2_array(x) -> np.ndarray:
    return psi_family_array(x, 2)[0][2]


def _scalar(x: float, k: int) -> EvalResult:
    values, errors = psi_family_array(np.asarray([x], dtype=float), k)
    return EvalResult(value=float(values[k][0]), est_error=float(errors[k][0]))


def digamma_family(x: float) -> Tuple[EvalResult, EvalResult, EvalResult]:
    """psi, psi' and psi'' at x from one shared pass."""
    values, errors = psi_family_array(np.asarray([x], dtype=float), 2)
    return tuple(  # type: ignore[return-value]
        EvalResult(value=float(v[0]), est_error=float(e[0]))
        for v, e in zip(values, errors)
    )


def digamma(x: float) -> EvalResult:
    return _scalar(x, 0)


def trigamma(x: float) -> EvalResult:
    return _scalar(x, 1)


def digamma2(x: float) -> EvalResult:
    """psi''(x), negative for every x > 0."""
    return _scalar(x, 2)


# ----------------------------------------------------------------------
# Harmonic mean
# ----------------------------------------------------------------------


def harmonic_mean_array(a, b) -> np.ndarray:
    """2ab/(a+b); NaN where a+b vanishes or the quotient overflows."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        out = 2.0 * a * b / (a + b)
    return np.where(np.isfinite(out), out, np.nan)


def harmonic_mean(a: float, b: float) -> float:
    """H(a, b) = 2ab/(a+b)."""
    value = float(harmonic_mean_array(a, b))
    if math.isnan(value):
        raise HarmonicMeanPole(
            "harmonic mean pole: a + b = 0", {"a": float(a), "b": float(b)}
        )
    return value


# ----------------------------------------------------------------------
# Zeros
# ----------------------------------------------------------------------


@lru_cache(maxsize=1)
def digamma_zero() -> DigammaZero:
    """The unique positive zero x0 of psi, bracketed in (1, 2)."""
    x0 = bisect(lambda t: float(psi_array(t)), 1.0, 2.0, xtol=1e-14, rtol=4 * _EPS)
    residual = abs(float(psi_array(x0)))
    logger.debug("digamma zero x0=%.17g residual=%.3e", x0, residual)
    return DigammaZero(x0=x0, residual=residual)


def theta_zero() -> float:
    """Zero x1 in (0, 1) of psi((x^2+1)/(2x)), i.e. x0 - sqrt(x0^2 - 1)."""
    x0 = digamma_zero().x0
    # Written as 1/(x0 + sqrt(x0^2-1)) to avoid the cancellation.
    return 1.0 / (x0 + math.sqrt(x0 * x0 - 1.0))
