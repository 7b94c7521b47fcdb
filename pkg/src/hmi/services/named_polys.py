"""The named polynomials behind the zeta lemmas, and their sign certificates.

P and Q bound theta'' and tau'' in the shifted variables t = 1 - x and
y = x - 1. Coefficients are sums of rational multiples of pi^p * gamma_n
and are rationalised from the high-precision Stieltjes digits.
"""

import logging
import math
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath as mp

from hmi.config import get_settings
from hmi.errors import CertificationFailure, DomainError
from hmi.schemas.kernels import StieltjesTable
from hmi.schemas.poly import Certificate, CoeffEnclosure, CriticalValue
from hmi.services.poly import (
    RationalPoly,
    cauchy_bound,
    count_roots_detail,
    isolate_roots,
    sign,
)
from hmi.services.stieltjes import require_constants, stieltjes_table

logger = logging.getLogger(__name__)

PI_DIGITS = 40
_PI_ERR = Fraction(1, 10 ** (PI_DIGITS - 2))

# (rational factor, power of pi, Stieltjes index or None for a pure constant)
Term = Tuple[Fraction, int, Optional[int]]
F = Fraction

# theta'' bound in t = 1 - x, keyed by power of t. Constant terms come from
# the remainder estimate.
_P_TERMS: Dict[int, List[Term]] = {
    13: [(F(1, 5040), 0, 10), (F(288), 0, None)],
    12: [(F(1, 720), 0, 9), (F(112), 1, None)],
    11: [(F(1, 120), 0, 8), (F(-1, 1680), 2, 10), (F(-696), 2, None)],
    10: [(F(1, 24), 0, 7), (F(-1, 240), 2, 9), (F(-276), 3, None)],
    9: [(F(1, 6), 0, 6), (F(-1, 40), 2, 8), (F(1, 1680), 4, 10), (F(440), 4, None)],
    8: [(F(1, 2), 0, 5), (F(-1, 8), 2, 7), (F(1, 240), 4, 9), (F(180), 5, None)],
    7: [(F(1), 0, 4), (F(-1, 2), 2, 6), (F(1, 40), 4, 8), (F(-1, 5040), 6, 10)],
    6: [(F(1), 0, 3), (F(-3, 2), 2, 5), (F(1, 8), 4, 7), (F(-1, 720), 6, 9)],
    5: [(F(-3), 2, 4), (F(1, 2), 4, 6), (F(-1, 120), 6, 8)],
    4: [(F(-3), 2, 3), (F(3, 2), 4, 5), (F(-1, 24), 6, 7)],
    3: [(F(3), 4, 4), (F(-1, 6), 6, 6)],
    2: [(F(3), 4, 3), (F(-1, 2), 6, 5)],
    1: [(F(-1), 6, 4)],
    0: [(F(-1), 6, 3)],
}

# tau'' bound in y = x - 1. There is no y^12 term.
_Q_TERMS: Dict[int, List[Term]] = {
    13: [(F(-1, 5040), 10, 10), (F(-288), 0, None)],
    11: [(F(1, 720), 10, 9), (F(-112), 1, None)],
    10: [(F(-1, 120), 10, 8), (F(1, 1680), 12, 10), (F(696), 2, None)],
    9: [(F(1, 24), 10, 7), (F(-1, 240), 12, 9), (F(276), 3, None)],
    8: [(F(-1, 6), 10, 6), (F(1, 40), 12, 8), (F(-1, 1680), 14, 10), (F(-440), 4, None)],
    7: [(F(1, 2), 10, 5), (F(-1, 8), 12, 7), (F(1, 240), 14, 9), (F(-180), 5, None)],
    6: [(F(-1), 10, 4), (F(1, 2), 12, 6), (F(-1, 40), 14, 8), (F(1, 5040), 16, 10)],
    5: [(F(-3, 2), 12, 5), (F(1, 8), 14, 7), (F(-1, 720), 16, 9)],
    4: [(F(3), 12, 4), (F(-1, 2), 14, 6), (F(1, 120), 16, 8)],
    3: [(F(3, 2), 14, 5), (F(-1, 24), 16, 7)],
    2: [(F(1, 6), 16, 6), (F(-3), 14, 4)],
    1: [(F(-1, 2), 16, 5)],
    0: [(F(1), 16, 4)],
}

# In P the remainder constants carry pi^9 relative to the gamma part; the
# consistent polynomial divides them back out.
P_REMAINDER_SHIFT = -9


def rational_pi() -> Fraction:
    with mp.workdps(PI_DIGITS + 10):
        return Fraction(mp.nstr(mp.pi, PI_DIGITS))


def rational_gammas(table: StieltjesTable, highest: int) -> List[Fraction]:
    require_constants(table, highest)
    return [Fraction(table.decimal(n)) for n in range(highest + 1)]


def _pi_power(pi: Fraction, p: int) -> Fraction:
    return pi**p if p >= 0 else 1 / pi ** (-p)


def _from_terms(
    terms: Dict[int, List[Term]],
    table: StieltjesTable,
    remainder_shift: int = 0,
) -> Tuple[RationalPoly, List[Fraction]]:
    """Polynomial in the shifted variable plus per-coefficient error bounds."""
    pi = rational_pi()
    gammas = rational_gammas(table, 10)
    degree = max(terms)
    coeffs = [Fraction(0)] * (degree + 1)
    errors = [Fraction(0)] * (degree + 1)
    for power, parts in terms.items():
        for factor, p, idx in parts:
            if idx is None:
                p += remainder_shift
                g, g_err = Fraction(1), Fraction(0)
            else:
                g, g_err = gammas[idx], Fraction(table.prec[idx])
            pp = _pi_power(pi, p)
            coeffs[power] += factor * pp * g
            # d(pi^p) <= |p| pi^(|p|+1) dpi for the rationalised pi
            pi_err = abs(p) * _pi_power(Fraction(4), abs(p) + 1) * _PI_ERR
            errors[power] += abs(factor) * (abs(pp) * g_err + abs(g) * pi_err)
    return RationalPoly(coeffs), errors


def _shifted_error(errors: Sequence[Fraction]) -> Fraction:
    """Max coefficient error after substituting x -> +-x + c, |c| = 1."""
    return sum((e * 2**j for j, e in enumerate(errors)), Fraction(0))


def build_named_poly(poly_id: str, table: Optional[StieltjesTable] = None) -> CoeffEnclosure:
    """Exact-rational enclosure of one of the named polynomials, in x."""
    table = table or stieltjes_table()
    if poly_id in ("P", "P_PRINTED"):
        shift = P_REMAINDER_SHIFT if poly_id == "P" else 0
        in_t, errs = _from_terms(_P_TERMS, table, shift)
        poly = in_t.compose_linear(-1, 1)
        err = _shifted_error(errs)
    elif poly_id == "Q":
        in_y, errs = _from_terms(_Q_TERMS, table)
        poly = in_y.compose_linear(1, -1)
        err = _shifted_error(errs)
    elif poly_id in ("P1", "V"):
        g1, g2, g3 = rational_gammas(table, 3)[1:4]
        e1, e2, e3 = (Fraction(table.prec[n]) for n in (1, 2, 3))
        if poly_id == "P1":
            poly = RationalPoly.from_descending(
                [-g1 - g2 - F(1, 2), 2 * g1 + 3 * g2 + 3, -g1 - 3 * g2 - 6, g2 + 3]
            )
            err = e1 * 2 + e2 * 3
        else:
            poly = RationalPoly.from_descending(
                [2 * g2 + g3, 2 * g1 - g3, 2 * g1, -2 * g2]
            )
            err = 2 * e1 + 2 * e2 + e3
    elif poly_id == "QUARTIC":
        poly = RationalPoly.from_descending([1, 0, 4, 0, -1])
        err = Fraction(0)
    else:
        raise DomainError(f"Unknown polynomial id {poly_id!r}", {"poly_id": poly_id})
    return CoeffEnclosure(poly_id=poly_id, poly=poly, coeff_abs_err=err)


# ----------------------------------------------------------------------
# Certificates
# ----------------------------------------------------------------------


def _grid(a: Fraction, b: Fraction, n: int) -> List[Fraction]:
    step = (b - a) / n
    return [a + step * (i + Fraction(1, 2)) for i in range(n)]


def certify_sign(
    e: CoeffEnclosure,
    a,
    b,
    expected_sign: int,
    grid_points: int = 200,
) -> Certificate:
    """Sturm certificate that e.poly keeps ``expected_sign`` on (a, b].

    ``b=None`` means +infinity: the interval is cut at
    B = max(sturm_upper, ceil(cauchy bound)) and the leading coefficient
    fixes the sign beyond B.
    """
    settings = get_settings()
    a = Fraction(a)
    poly = e.poly
    method = "sturm"
    if b is None:
        upper = max(Fraction(settings.sturm_upper), Fraction(math.ceil(cauchy_bound(poly))))
        method = "sturm+cauchy"
        if sign(poly.leading) != expected_sign:
            raise CertificationFailure(
                f"{e.poly_id}: leading coefficient sign contradicts {expected_sign:+d} at infinity",
                {"poly_id": e.poly_id, "leading": str(poly.leading)},
            )
    else:
        upper = Fraction(b)

    count, a_used, b_used = count_roots_detail(
        poly, a, upper, Fraction(settings.sturm_eps)
    )
    if count:
        raise CertificationFailure(
            f"{e.poly_id} has {count} root(s) in ({a}, {upper}]",
            {"poly_id": e.poly_id, "root_count": count},
        )
    mid_sign = sign(poly((a + upper) / 2))
    if mid_sign != expected_sign:
        raise CertificationFailure(
            f"{e.poly_id}: sign {mid_sign:+d} on ({a}, {upper}) contradicts {expected_sign:+d}",
            {"poly_id": e.poly_id, "sign": mid_sign},
        )

    margin = min(abs(float(poly(x))) for x in _grid(a, upper, grid_points))
    reach = max(Fraction(1), abs(a), abs(upper))
    bound = float(e.coeff_abs_err * reach**poly.degree * (poly.degree + 1))
    cert = Certificate(
        poly_id=e.poly_id,
        interval=[str(a), None if b is None else str(upper)],
        root_count=0,
        sign=expected_sign,
        margin=margin,
        perturbation_bound=bound,
        robust=margin > bound,
        upper_used=str(upper) if b is None else None,
        endpoints_perturbed=(a_used != a or b_used != upper),
        method=method,
    )
    logger.info(
        "certificate %s on (%s, %s]: margin=%.3e bound=%.3e %s",
        e.poly_id,
        a,
        upper,
        margin,
        bound,
        cert.status,
    )
    return cert


def critical_maximum(
    e: CoeffEnclosure, a, b, width: Fraction = Fraction(1, 10**15)
) -> CriticalValue:
    """Largest value of e.poly at a critical point inside (a, b]."""
    deriv = e.poly.derivative()
    brackets = isolate_roots(deriv, Fraction(a), Fraction(b), width)
    if not brackets:
        raise DomainError(
            f"{e.poly_id}' has no root in ({a}, {b}]", {"poly_id": e.poly_id}
        )
    best = max(brackets, key=lambda br: e.poly((br[0] + br[1]) / 2))
    x = (best[0] + best[1]) / 2
    return CriticalValue(
        poly_id=e.poly_id,
        x=float(x),
        value=float(e.poly(x)),
        bracket=[str(best[0]), str(best[1])],
    )
