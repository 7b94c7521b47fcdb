"""Expression catalog: every named function the claims are phrased in.

Each entry is a vectorised composition of the kernel modules. Expressions with
a removable singularity at x=1 go through the regular part
R(x) = zeta(x) - 1/(x-1), so pole terms cancel analytically rather than in
floating point.
"""

import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Dict, List, Mapping, Optional, Tuple

import numpy as np

from hmi.errors import DomainError, HarmonicMeanPole, HmiError
from hmi.schemas.kernels import LaurentConfig, StieltjesTable
from hmi.schemas.poly import CoeffEnclosure, CriticalValue
from hmi.services.digamma import harmonic_mean_array, psi_family_array
from hmi.services.laurent import default_laurent_config, regular_part_array
from hmi.services.named_polys import build_named_poly, critical_maximum
from hmi.services.stieltjes import stieltjes_table
from hmi.services.zeta import eta_array, zeta_family_array

logger = logging.getLogger(__name__)

LOG2 = math.log(2.0)
LOG_2PI = math.log(2.0 * math.pi)

Params = Mapping[str, float]
ExprFn = Callable[["ExpressionCatalog", np.ndarray, Params], np.ndarray]


@dataclass(frozen=True)
class ExprEntry:
    name: str
    formula: str
    fn: ExprFn
    params: Tuple[str, ...] = ()
    singular: bool = False  # NaN marks a harmonic-mean pole


_ENTRIES: Dict[str, ExprEntry] = {}


def expression(name: str, formula: str, params: Tuple[str, ...] = (), singular: bool = False):
    def register(fn: ExprFn) -> ExprFn:
        _ENTRIES[name] = ExprEntry(name, formula, fn, params, singular)
        return fn

    return register


def expression_names() -> List[str]:
    return sorted(_ENTRIES)


def get_entry(name: str) -> ExprEntry:
    try:
        return _ENTRIES[name]
    except KeyError:
        raise DomainError(f"Unknown expression {name!r}", {"expression": name}) from None


def _pole(x: np.ndarray, k: int) -> np.ndarray:
    """k-th derivative of 1/(x-1)."""
    return (-1.0) ** k * math.factorial(k) / (x - 1.0) ** (k + 1)


class ExpressionCatalog:
    """Evaluates catalog expressions against one Stieltjes table."""

    def __init__(
        self,
        table: Optional[StieltjesTable] = None,
        cfg: Optional[LaurentConfig] = None,
    ):
        self.table = table or stieltjes_table()
        self.cfg = cfg or default_laurent_config()
        self.g = self.table.gamma

    # ------------------------------------------------------------------
    # Kernel access
    # ------------------------------------------------------------------

    def psi(self, x: np.ndarray, k: int = 0) -> np.ndarray:
        return psi_family_array(x, k)[0][k]

    def zeta(self, x: np.ndarray, k: int = 0) -> np.ndarray:
        return zeta_family_array(x, k, self.cfg)[0][k]

    def eta(self, x: np.ndarray, k: int = 0) -> np.ndarray:
        return eta_array(x, k)

    def regular(self, x: np.ndarray, k: int = 0) -> np.ndarray:
        """k-th derivative of R(x) = zeta(x) - 1/(x-1), finite at x=1."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        inside = np.abs(x - 1.0) < self.cfg.radius
        out = np.empty_like(x)
        if np.any(inside):
            out[inside] = regular_part_array(x[inside], k, self.cfg, self.table)[0]
        if np.any(~inside):
            far = x[~inside]
            out[~inside] = self.zeta(far, k) - _pole(far, k)
        return out

    def g1(self, x: np.ndarray) -> np.ndarray:
        """(x-1) zeta(x), equal to 1 at x=1."""
        return 1.0 + (x - 1.0) * self.regular(x)

    def g1_prime(self, x: np.ndarray) -> np.ndarray:
        return self.regular(x) + (x - 1.0) * self.regular(x, 1)

    def recip_zeta(self, x: np.ndarray) -> np.ndarray:
        return (x - 1.0) / self.g1(x)

    @cached_property
    def polys(self) -> Dict[str, CoeffEnclosure]:
        return {pid: build_named_poly(pid, self.table) for pid in ("P1", "V")}

    @cached_property
    def p1_critical(self) -> CriticalValue:
        return critical_maximum(self.polys["P1"], 2, 50)

    # ------------------------------------------------------------------
    # Evaluation
    # ------------------------------------------------------------------

    def evaluate(self, name: str, x, params: Optional[Params] = None) -> np.ndarray:
        """Vectorised evaluation; kernel domain errors name the expression."""
        entry = get_entry(name)
        merged = dict(params or {})
        missing = [p for p in entry.params if p not in merged]
        if missing:
            raise DomainError(
                f"{name} needs parameter(s) {', '.join(missing)}",
                {"expression": name, "missing": missing},
            )
        arr = np.atleast_1d(np.asarray(x, dtype=float))
        try:
            with np.errstate(divide="ignore", invalid="ignore"):
                out = np.asarray(entry.fn(self, arr, merged), dtype=float)
        except HmiError as exc:
            exc.details.setdefault("expression", name)
            exc.message = f"{name}: {exc.message}"
            exc.args = (exc.message,)
            raise
        return np.broadcast_to(out, arr.shape).copy()

    def aux_eval(self, name: str, x: float, params: Optional[Params] = None) -> float:
        """Scalar evaluation of one catalog expression."""
        value = float(self.evaluate(name, [x], params)[0])
        if not math.isfinite(value):
            if get_entry(name).singular:
                raise HarmonicMeanPole(
                    f"{name}: harmonic-mean pole at x={x!r}", {"expression": name, "x": x}
                )
            raise DomainError(
                f"{name} is not finite at x={x!r}", {"expression": name, "x": x}
            )
        return value


# ----------------------------------------------------------------------
# Kernels by name
# ----------------------------------------------------------------------


for _k, _suffix in enumerate(("", "1", "2")):
    expression(f"PSI{_suffix}", f"psi^({_k})(x)")(
        lambda c, x, p, k=_k: c.psi(x, k)
    )
    expression(f"ETA{_suffix}", f"eta^({_k})(x)")(
        lambda c, x, p, k=_k: c.eta(x, k)
    )
for _k, _suffix in enumerate(("", "1", "2", "3")):
    expression(f"ZETA{_suffix}", f"zeta^({_k})(x)")(
        lambda c, x, p, k=_k: c.zeta(x, k)
    )


@expression("RECIP_ZETA", "1/zeta(x)")
def _recip_zeta(c, x, p):
    return c.recip_zeta(x)


@expression("NEG_ZETA1", "-zeta'(x)")
def _neg_zeta1(c, x, p):
    return -c.zeta(x, 1)


@expression("LOGABS_ZETA", "log|zeta(x)|")
def _logabs_zeta(c, x, p):
    return np.log(np.abs(c.zeta(x)))


@expression("SIGNED_ZETA", "(-1)^n zeta^(n)(x)", params=("n",))
def _signed_zeta(c, x, p):
    n = int(p["n"])
    return (-1.0) ** n * c.zeta(x, n)


# ----------------------------------------------------------------------
# Digamma family
# ----------------------------------------------------------------------


@expression("HM_RECIP", "H(x, 1/x) = 2x/(1+x^2)")
def _hm_recip(c, x, p):
    return 2.0 * x / (1.0 + x * x)


@expression("NEG_GAMMA", "-gamma")
def _neg_gamma(c, x, p):
    return np.full_like(x, -c.g[0])


@expression("NEG_GAMMA_HM", "-gamma H(x, 1/x)")
def _neg_gamma_hm(c, x, p):
    return -c.g[0] * _hm_recip(c, x, p)


@expression("GAMMA2_OVER_PSI_HM", "gamma^2 / psi(H(x, 1/x))")
def _gamma2_over_psi_hm(c, x, p):
    return c.g[0] ** 2 / c.psi(_hm_recip(c, x, p))


@expression("THETA", "psi(1/H(x, 1/x)) = psi((x + 1/x)/2)")
def _theta(c, x, p):
    return c.psi(0.5 * (x + 1.0 / x))


@expression("THETA_RECIP2", "2/theta(x)")
def _theta_recip2(c, x, p):
    return 2.0 / _theta(c, x, p)


@expression("PSI_SUM", "psi(x) + psi(1/x)")
def _psi_sum(c, x, p):
    return c.psi(x) + c.psi(1.0 / x)


@expression("SIGMA", "H(psi(x), psi(1/x))", singular=True)
def _sigma(c, x, p):
    return harmonic_mean_array(c.psi(x), c.psi(1.0 / x))


@expression("TAU_DIG", "1/psi(x)")
def _tau_dig(c, x, p):
    return 1.0 / c.psi(x)


@expression("U_DIG", "gamma/x + psi(x)")
def _u_dig(c, x, p):
    return c.g[0] / x + c.psi(x)


@expression("U_DIG_RECIP_SUM", "1/psi(x) + 1/psi(1/x)")
def _u_dig_recip_sum(c, x, p):
    return 1.0 / c.psi(x) + 1.0 / c.psi(1.0 / x)


@expression("PSI_PROD_RECIP", "psi(x) psi(1/x)")
def _psi_prod_recip(c, x, p):
    return c.psi(x) * c.psi(1.0 / x)


@expression("PSI_CURVATURE", "psi'(x)^2 + psi''(x)")
def _psi_curvature(c, x, p):
    values, _ = psi_family_array(x, 2)
    return values[1] ** 2 + values[2]


@expression("X_PSI", "x psi(x)")
def _x_psi(c, x, p):
    return x * c.psi(x)


@expression("PSI_OVER_LOG", "psi(x) / log x")
def _psi_over_log(c, x, p):
    return c.psi(x) / np.log(x)


# ----------------------------------------------------------------------
# Zeta compositions
# ----------------------------------------------------------------------


@expression("G_ZETA", "x zeta'(x) - zeta'(1/x)/x")
def _g_zeta(c, x, p):
    # pole parts -x/(x-1)^2 and x/(x-1)^2 cancel
    return x * c.regular(x, 1) - c.regular(1.0 / x, 1) / x


@expression("PHI_SUM", "zeta(s) + zeta(1/s)")
def _phi_sum(c, x, p):
    # 1/(s-1) + 1/(1/s-1) = -1
    return c.regular(x) + c.regular(1.0 / x) - 1.0


@expression("U_PROD", "zeta(s) zeta(1/s)")
def _u_prod(c, x, p):
    return c.zeta(x) * c.zeta(1.0 / x)


@expression("H_PROD", "zeta(1+s) zeta(1-s)")
def _h_prod(c, x, p):
    return c.zeta(1.0 + x) * c.zeta(1.0 - x)


@expression("RATIO_R", "(zeta(x) + zeta(1/x)) / (zeta(x) zeta(1/x))")
def _ratio_r(c, x, p):
    return c.recip_zeta(x) + c.recip_zeta(1.0 / x)


@expression("HM_ZETA_INV", "H(zeta(x), zeta(1/x))", singular=True)
def _hm_zeta_inv(c, x, p):
    ratio = _ratio_r(c, x, p)
    return np.where(ratio != 0.0, 2.0 / ratio, np.nan)


@expression("HM_ZETA_REFL", "H(zeta(x), zeta(1-x))", singular=True)
def _hm_zeta_refl(c, x, p):
    total = c.recip_zeta(x) + c.recip_zeta(1.0 - x)
    return np.where(total != 0.0, 2.0 / total, np.nan)


@expression("HM_ETA_REFL", "H(eta(x), eta(1-x))", singular=True)
def _hm_eta_refl(c, x, p):
    return harmonic_mean_array(c.eta(x), c.eta(1.0 - x))


@expression("ZETA_REFL_PROD", "zeta(x) zeta(1-x)")
def _zeta_refl_prod(c, x, p):
    return c.g1(x) * c.g1(1.0 - x) / (x * (1.0 - x))


@expression("ZETA_REFL_LOWER", "1/(2x(1-x))")
def _zeta_refl_lower(c, x, p):
    return 1.0 / (2.0 * x * (1.0 - x))


@expression("ZETA_REFL_UPPER", "zeta(1/2)^2 / (4x(1-x))")
def _zeta_refl_upper(c, x, p):
    half = float(c.zeta(np.asarray([0.5]))[0])
    return half * half / (4.0 * x * (1.0 - x))


@expression("G1", "(x-1) zeta(x)")
def _g1(c, x, p):
    return c.g1(x)


@expression("LOG_G1", "log((x-1) zeta(x))")
def _log_g1(c, x, p):
    return np.log(c.g1(x))


@expression("G2", "x(1-x) zeta(x) zeta(1-x)")
def _g2(c, x, p):
    return c.g1(x) * c.g1(1.0 - x)


@expression("H_AB", "x^a |x-1|^b zeta(x)", params=("a", "b"))
def _h_ab(c, x, p):
    d = x - 1.0
    return x ** p["a"] * np.abs(d) ** (p["b"] - 1.0) * np.sign(d) * c.g1(x)


@expression("LOG_H_AB", "log|x^a |x-1|^b zeta(x)|", params=("a", "b"))
def _log_h_ab(c, x, p):
    out = p["a"] * np.log(x) + np.log(c.g1(x))
    if p["b"] != 1.0:
        out = out + (p["b"] - 1.0) * np.log(np.abs(x - 1.0))
    return out


@expression("VARPHI_RATIO", "log((x-1)/(1-2^(1-x)))")
def _varphi_ratio(c, x, p):
    u = x - 1.0
    den = -np.expm1(-u * LOG2)
    safe = np.where(u == 0.0, 1.0, u / np.where(u == 0.0, 1.0, den))
    return np.where(u == 0.0, -math.log(LOG2), np.log(safe))


VARPHI_STEP = 1e-3


@expression("VARPHI_RATIO_D1", "central difference of VARPHI_RATIO, step 1e-3")
def _varphi_ratio_d1(c, x, p):
    h = VARPHI_STEP
    return (_varphi_ratio(c, x + h, p) - _varphi_ratio(c, x - h, p)) / (2 * h)


@expression("VARPHI_RATIO_D2", "second central difference of VARPHI_RATIO, step 1e-3")
def _varphi_ratio_d2(c, x, p):
    h = VARPHI_STEP
    mid = _varphi_ratio(c, x, p)
    return (_varphi_ratio(c, x + h, p) - 2 * mid + _varphi_ratio(c, x - h, p)) / (h * h)


@expression("ZETA_LOGDERIV", "zeta'(x)/zeta(x)")
def _zeta_logderiv(c, x, p):
    values, _ = zeta_family_array(x, 1, c.cfg)
    return values[1] / values[0]


@expression("LOGDERIV_G1", "zeta'(x)/zeta(x) + 1/(x-1)")
def _logderiv_g1(c, x, p):
    return c.g1_prime(x) / c.g1(x)


# ----------------------------------------------------------------------
# Lemma bounds
# ----------------------------------------------------------------------


@expression("T_LEM", "4^(1-x)((x-1) log 4 + 1) - x/2")
def _t_lem(c, x, p):
    log4 = math.log(4.0)
    return np.exp((1.0 - x) * log4) * ((x - 1.0) * log4 + 1.0) - x / 2.0


@expression("S_LEM", "x^2 log a / a^x - 1", params=("a",))
def _s_lem(c, x, p):
    log_a = math.log(p["a"])
    return x * x * log_a * np.exp(-x * log_a) - 1.0


@expression("THETA_BOUND", "zeta'(x) + 1/(1-x)^2 + gamma_1 + gamma_2 (1-x)")
def _theta_bound(c, x, p):
    return c.regular(x, 1) + c.g[1] + c.g[2] * (1.0 - x)


@expression(
    "TAU_BOUND",
    "zeta'(x) + 1/(x-1)^2 - gamma_2 (x-1) + gamma_1 + gamma_3 (x-1)^2 / 2",
)
def _tau_bound(c, x, p):
    d = x - 1.0
    return c.regular(x, 1) - c.g[2] * d + c.g[1] + 0.5 * c.g[3] * d * d


def _zp_upper(x: np.ndarray, base: int) -> np.ndarray:
    log_b = math.log(base)
    d = x - 1.0
    tail = np.exp(-d * log_b) * (d * log_b + 1.0) / (d * d)
    head = sum(math.log(a) * np.exp(-x * math.log(a)) for a in range(2, base + 1))
    return tail + head


@expression("ZP_UPPER3", "3^(1-x)((x-1) log 3 + 1)/(x-1)^2 + sum_{a=2..3} log a / a^x")
def _zp_upper3(c, x, p):
    return _zp_upper(x, 3)


@expression("ZP_UPPER4", "4^(1-x)((x-1) log 4 + 1)/(x-1)^2 + sum_{a=2..4} log a / a^x")
def _zp_upper4(c, x, p):
    return _zp_upper(x, 4)


@expression("F_BOUND", "-x zeta'(x) - x/(1-x)^2 - gamma_1/x - gamma_2 (x-1)/x^2")
def _f_bound(c, x, p):
    return -x * c.regular(x, 1) - c.g[1] / x - c.g[2] * (x - 1.0) / (x * x)


def _quintic_terms(c: ExpressionCatalog, x: np.ndarray, order: int) -> np.ndarray:
    g, g1, g2 = c.g[0], c.g[1], c.g[2]
    t = 1.0 - x
    if order == 0:
        return (
            -2 * g / t**3
            - 6 * g1 / t**2
            - 1.5 * g2 * g2 * t**2
            - 3 * g2 * g1 * t
            - 6 * g2 / t
            - 2 * g1 * g1
            + g * g2
        )
    if order == 1:
        return -6 * g / t**4 - 12 * g1 / t**3 + 3 * g2 * g2 * t + 3 * g1 * g2 - 6 * g2 / t**2
    return -24 * g / t**5 - 36 * g1 / t**4 - 3 * g2 * g2 - 12 * g2 / t**3


@expression("GB_QUINTIC", "bound g(x) for the 1/zeta concavity numerator, x < 1")
def _gb_quintic(c, x, p):
    return _quintic_terms(c, x, 0)


@expression("GB_QUINTIC1", "g'(x)")
def _gb_quintic1(c, x, p):
    return _quintic_terms(c, x, 1)


@expression("GB_QUINTIC2", "g''(x)")
def _gb_quintic2(c, x, p):
    return _quintic_terms(c, x, 2)


@expression("SANDWICH_LO", "-(-1)^n n!/(1-x)^(n+1) - n!/(1+x)^(n+1)", params=("n",))
def _sandwich_lo(c, x, p):
    n = int(p["n"])
    f = math.factorial(n)
    return -((-1.0) ** n) * f / (1.0 - x) ** (n + 1) - f / (1.0 + x) ** (n + 1)


@expression("SANDWICH_HI", "-(-1)^n n!/(1-x)^(n+1) + n!/(1+x)^(n+1)", params=("n",))
def _sandwich_hi(c, x, p):
    n = int(p["n"])
    f = math.factorial(n)
    return -((-1.0) ** n) * f / (1.0 - x) ** (n + 1) + f / (1.0 + x) ** (n + 1)


# zeta corollary bounds, written as gaps that are positive when the bound holds


@expression("COR1_A_GAP", "zeta''(x) - gamma_2 + 2/(1-x)^3")
def _cor1_a_gap(c, x, p):
    return c.regular(x, 2) - c.g[2]


@expression(
    "COR1_B_GAP",
    "zeta(x) - 1/(x-1) - gamma - gamma_1 (1-x) - gamma_2 (1-x)^2 / 2",
)
def _cor1_b_gap(c, x, p):
    t = 1.0 - x
    return c.regular(x) - c.g[0] - c.g[1] * t - 0.5 * c.g[2] * t * t


@expression(
    "COR1_C_GAP",
    "1/(x-1) - (2 gamma_1 + gamma_2 - 1)/2 + gamma_1 (1-x) + gamma_2 (1-x)^2 / 2 - zeta(x)",
)
def _cor1_c_gap(c, x, p):
    t = 1.0 - x
    g1, g2 = c.g[1], c.g[2]
    return (1.0 - 2 * g1 - g2) / 2 + g1 * t + 0.5 * g2 * t * t - c.regular(x)


@expression("ZETA1_LOGCONVEX_GAP", "zeta'(x) + 1/(1-x)^2 - gamma_2 x - 1 + log(2 pi)/2")
def _zeta1_logconvex_gap(c, x, p):
    return c.regular(x, 1) - c.g[2] * x - 1.0 + 0.5 * LOG_2PI


@expression("LOGDERIV_LOWER_GAP", "zeta'/zeta - b/(1-x) + a/x", params=("a", "b"))
def _logderiv_lower_gap(c, x, p):
    return _logderiv_g1(c, x, p) + (p["b"] - 1.0) / (x - 1.0) + p["a"] / x


@expression("LOGDERIV_UPPER_GAP", "1/(1-x) - a/x + gamma + a - zeta'/zeta", params=("a",))
def _logderiv_upper_gap(c, x, p):
    a = p["a"]
    return c.g[0] + a - a / x - _logderiv_g1(c, x, p)


@expression("LOGDERIV_2PI_GAP", "log(2 pi) - 1 + 1/(1-x) - zeta'/zeta")
def _logderiv_2pi_gap(c, x, p):
    return LOG_2PI - 1.0 - _logderiv_g1(c, x, p)


# ----------------------------------------------------------------------
# Cubics from the exact-polynomial module
# ----------------------------------------------------------------------


def _poly_values(poly, x: np.ndarray) -> np.ndarray:
    return np.asarray([poly.evaluate_float(float(v)) for v in x])


@expression("P1_POLY", "P1(x)")
def _p1_poly(c, x, p):
    return _poly_values(c.polys["P1"].poly, x)


@expression("P1_POLY1", "P1'(x)")
def _p1_poly1(c, x, p):
    return _poly_values(c.polys["P1"].poly.derivative(), x)


@expression("P1_CRITICAL_MAX", "max of P1 on [2, infinity), constant in x")
def _p1_critical_max(c, x, p):
    return np.full_like(x, c.p1_critical.value)


@expression("V_POLY", "v(x)")
def _v_poly(c, x, p):
    return _poly_values(c.polys["V"].poly, x)


@expression("V_POLY1", "v'(x)")
def _v_poly1(c, x, p):
    return _poly_values(c.polys["V"].poly.derivative(), x)
