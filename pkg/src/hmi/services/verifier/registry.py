"""The claim registry: every statement the suite verifies, in report order."""

import logging
import math
from typing import Dict, List, Optional, Sequence, Tuple

from hmi.schemas.claims import Claim
from hmi.services.digamma import digamma_zero, theta_zero
from hmi.services.verifier.catalog import LOG2, LOG_2PI, ExpressionCatalog

logger = logging.getLogger(__name__)

Domain = List[Tuple[float, float]]

CLAIM_IDS: Tuple[str, ...] = (
    "D1", "D2", "D3", "D4", "D5", "D6", "D7", "D8", "D9", "D10", "D11", "D12", "D13",
    "Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z9", "Z10", "Z11", "Z12", "Z13",
    "Z14", "Z15", "Z16", "Z17", "Z18", "Z19", "Z20", "Z21", "Z22", "Z23", "Z24",
    "Z25", "Z26", "L1", "X1", "S1", "S2", "S3", "S4", "S5", "S6",
)

# both sides of the pole/removable point at 1
POS: Domain = [(0.0, 0.999), (1.001, 1e4)]
UNIT: Domain = [(0.0, 1.0)]
OFF_HALF: Domain = [(0.0, 0.499), (0.501, 1.0)]
BEYOND_ONE: Domain = [(1.0, 1e3)]


def claim_ids() -> List[str]:
    return list(CLAIM_IDS)


# ----------------------------------------------------------------------
# Builders
# ----------------------------------------------------------------------


def _cmp(
    cid: str,
    lhs: str,
    relation: str,
    rhs: Optional[str] = None,
    *,
    value: Optional[float] = None,
    domain: Domain,
    spacing: str = "log",
    anchor: str = "",
    **kw,
) -> Claim:
    return Claim(
        id=cid,
        kind="POINTWISE",
        anchor=anchor,
        lhs=lhs,
        rhs=rhs,
        rhs_value=value,
        relation=relation,
        domain=domain,
        spacing=spacing,
        **kw,
    )


def _shape(
    cid: str,
    lhs: str,
    kind: str,
    domain: Domain,
    *,
    direction: int = 1,
    spacing: str = "log",
    anchor: str = "",
    **kw,
) -> Claim:
    return Claim(
        id=cid,
        kind=kind,
        anchor=anchor,
        lhs=lhs,
        relation=">",
        direction=direction,
        domain=domain,
        spacing=spacing,
        **kw,
    )


def _limit(
    cid: str,
    lhs: str,
    endpoint: Optional[float],
    side: str,
    expected: float,
    *,
    tol: float = 1e-4,
    anchor: str = "",
    **kw,
) -> Claim:
    return Claim(
        id=cid,
        kind="LIMIT",
        anchor=anchor,
        lhs=lhs,
        endpoint=endpoint,
        side=side,
        expected=expected,
        tol=tol,
        **kw,
    )


def _identity(
    cid: str,
    lhs: str,
    *,
    tol: float,
    rhs: Optional[str] = None,
    value: Optional[float] = None,
    points: Sequence[float] = (),
    domain: Domain = (),
    anchor: str = "",
    **kw,
) -> Claim:
    return Claim(
        id=cid,
        kind="IDENTITY",
        anchor=anchor,
        lhs=lhs,
        rhs=rhs,
        rhs_value=value,
        relation="=",
        tol=tol,
        points=list(points),
        domain=list(domain),
        spacing=kw.pop("spacing", "linear"),
        **kw,
    )


def _all(cid: str, anchor: str, statement: str, parts: Sequence[Claim], **kw) -> Claim:
    """Compound claim; its kind is the kind of the first part."""
    return Claim(
        id=cid,
        kind=parts[0].kind,
        anchor=anchor,
        statement=statement,
        parts=list(parts),
        **kw,
    )


# ----------------------------------------------------------------------
# Digamma claims
# ----------------------------------------------------------------------


def _digamma_claims(c: ExpressionCatalog) -> List[Claim]:
    gamma = c.g[0]
    x0 = digamma_zero().x0
    x1 = theta_zero()
    chain = 'Theorem psi, "all positive real numbers"'
    near_one = "scan excludes (1 - 1e-3, 1 + 1e-3); the limit part covers x -> 1"
    return [
        _all("D1", chain, "-gamma < -gamma H(x, 1/x)", [
            _cmp("D1.scan", "NEG_GAMMA", "<", "NEG_GAMMA_HM", domain=POS),
            _limit("D1.limit", "NEG_GAMMA_HM", 1.0, "left", -gamma),
        ], notes=near_one),
        _all("D2", chain, "-gamma H(x, 1/x) < gamma^2 / psi(H(x, 1/x))", [
            _cmp("D2.scan", "NEG_GAMMA_HM", "<", "GAMMA2_OVER_PSI_HM", domain=POS),
            _limit("D2.limit", "GAMMA2_OVER_PSI_HM", 1.0, "left", -gamma),
        ], notes=near_one),
        _all("D3", chain, "gamma^2 / psi(H(x, 1/x)) < psi(1/H(x, 1/x))", [
            _cmp(
                "D3.scan", "GAMMA2_OVER_PSI_HM", "<", "THETA",
                domain=[(0.0, 0.95), (1.0 / 0.95, 1e4)],
            ),
            _limit("D3.limit", "THETA", 1.0, "left", -gamma),
        ], notes="scan excludes (0.95, 1/0.95); the limit part covers x -> 1"),
        _all("D4", chain, "psi(1/H(x, 1/x)) < H(psi(x), psi(1/x))", [
            _cmp(
                "D4.scan", "THETA", "<", "SIGMA", domain=POS,
                skip_singular=True, singular_guard="PSI_SUM",
            ),
            _limit("D4.limit", "SIGMA", 1.0, "left", -gamma),
        ], notes=near_one),
        _all("D5", 'Lemma, "admits a unique zero"',
             "THETA decreasing on (0,1), increasing on (1,inf), unique zero x1 < 1/x0", [
            _shape("D5.dec", "THETA", "MONOTONE", UNIT, direction=-1),
            _shape("D5.inc", "THETA", "MONOTONE", [(1.0, 1e4)]),
            Claim(
                id="D5.zero", kind="ROOT_LOCATE", anchor="", lhs="THETA",
                bracket=(0.01, 1.0), expected=x1, tol=1e-10, locate_upper=1.0 / x0,
            ),
            _identity("D5.at_one", "THETA", value=-gamma, points=[1.0], tol=1e-12),
        ]),
        _all("D6", '"u is strictly increasing"', "U_DIG increasing, negative on (0,1)", [
            _shape("D6.inc", "U_DIG", "MONOTONE", [(0.0, 100.0)]),
            _cmp("D6.neg", "U_DIG", "<", value=0.0, domain=UNIT),
            _identity("D6.at_one", "U_DIG", value=0.0, points=[1.0], tol=1e-12),
        ]),
        _cmp(
            "D7", "PSI_CURVATURE", ">=", value=0.0, domain=[(0.0, 100.0)],
            anchor='"(psi\'(x))^2 + psi\'\'(x) >= 0"',
            statement="psi'(x)^2 + psi''(x) >= 0",
        ),
        _shape(
            "D8", "TAU_DIG", "CONCAVE", [(1.0 / x0, x0)], spacing="linear", eps=1e-3,
            anchor='"tau is strictly concave on (x0, 1/x0)"',
            statement="1/psi concave on (1/x0, x0)",
            notes="interval read as (1/x0, x0); printed as (x0, 1/x0)",
        ),
        _cmp(
            "D9", "PSI_PROD_RECIP", "<", value=gamma * gamma,
            domain=[(0.0, 1.0), (1.0, 1e4)], eps=1e-3,
            anchor='"psi(y) psi(1/y) < gamma^2 (Proposition 4)"',
            statement="psi(y) psi(1/y) < gamma^2",
        ),
        _all("D10", '"lim_{x->0+} x psi(x) = -1"', "limits of x psi(x) and psi(x)/log x", [
            _limit("D10.zero", "X_PSI", 0.0, "right", -1.0, tol=1e-6, k_range=(2, 8)),
            _limit("D10.inf", "PSI_OVER_LOG", None, "infinity", 1.0, tol=1e-3, k_range=(2, 6)),
        ]),
        _cmp(
            "D11", "U_DIG_RECIP_SUM", "<", "THETA_RECIP2", domain=[(0.0, x1)],
            anchor="Theorem psi proof, step on (0, x1)",
            statement="1/psi(x) + 1/psi(1/x) < 2/psi((x + 1/x)/2)",
        ),
        _cmp(
            "D12", "PSI", ">", value=-1.97, domain=[(0.5, 100.0)], eps=0.0,
            anchor="Theorem psi proof, step on (1/x0, 1)",
            statement="psi(x) > -1.97 on [1/2, 100]",
        ),
        _all("D13", "Theorem psi proof, reduction to (0, 1)",
             "THETA and SIGMA are invariant under x -> 1/x", [
            _identity(
                "D13.theta", "THETA", rhs="THETA", rhs_arg="reciprocal",
                domain=[(0.01, 0.99)], tol=1e-10,
            ),
            _identity(
                "D13.sigma", "SIGMA", rhs="SIGMA", rhs_arg="reciprocal",
                domain=[(0.01, 0.99)], tol=1e-10, skip_singular=True,
            ),
        ]),
    ]


# ----------------------------------------------------------------------
# Zeta claims
# ----------------------------------------------------------------------


def _zeta_claims(c: ExpressionCatalog) -> List[Claim]:
    gamma = c.g[0]
    zeta_half = c.aux_eval("ZETA", 0.5)
    eta_half = c.aux_eval("ETA", 0.5)
    log4 = math.log(4.0)
    t1 = 'Theorem t1, "strictly increasing on (0,1)"'
    claims = [
        _all("Z1", t1, "RATIO_R increasing on (0,1), decreasing on (1,inf)", [
            _shape("Z1.inc", "RATIO_R", "MONOTONE", UNIT),
            _shape("Z1.dec", "RATIO_R", "MONOTONE", BEYOND_ONE, direction=-1),
            _limit("Z1.zero", "RATIO_R", 0.0, "right", -1.0),
            _limit("Z1.one", "RATIO_R", 1.0, "left", 0.0),
        ]),
        _all("Z2", 'Theorem t1, "H(zeta(x), zeta(1/x)) < -2"', "HM_ZETA_INV < -2", [
            _cmp(
                "Z2.scan", "HM_ZETA_INV", "<", value=-2.0,
                domain=[(0.0, 1.0), (1.0, 1e4)], skip_singular=True,
            ),
            _limit("Z2.zero", "HM_ZETA_INV", 0.0, "right", -2.0),
        ], notes="equality case x = 0 read as the limit at 0+"),
        _all("Z3", 'p2, "1/2 < eta(s) < 1"', "eta concave and increasing, 1/2 < eta < 1", [
            _shape("Z3.concave", "ETA", "CONCAVE", [(0.01, 20.0)]),
            _shape("Z3.inc", "ETA", "MONOTONE", [(0.01, 20.0)]),
            _cmp("Z3.lower", "ETA", ">", value=0.5, domain=[(0.001, 25.0)]),
            _cmp("Z3.upper", "ETA", "<", value=1.0, domain=[(0.001, 25.0)]),
        ]),
        _all("Z4", 'r2, "zeta(s) < 0 and zeta\'(s) < 0"', "zeta < 0 and zeta' < 0 on (0,1)", [
            _cmp("Z4.zeta", "ZETA", "<", value=0.0, domain=UNIT),
            _cmp("Z4.zeta1", "ZETA1", "<", value=0.0, domain=UNIT),
        ]),
    ]

    sign_parts = []
    for n, name in enumerate(("ZETA", "ZETA1", "ZETA2", "ZETA3")):
        sign_parts.append(
            _cmp(f"Z5.right{n}", "SIGNED_ZETA", ">", value=0.0,
                 domain=[(1.001, 20.0)], params={"n": n})
        )
        sign_parts.append(_cmp(f"Z5.left{n}", name, "<", value=0.0, domain=[(0.001, 0.999)]))
    claims.append(_all(
        "Z5", 'pr6(1), "strictly completely monotonic"',
        "(-1)^n zeta^(n) > 0 on (1,inf) and zeta^(n) < 0 on (0,1), n <= 3", sign_parts,
    ))

    sandwich = []
    for n in range(4):
        domain = [(0.01, 0.75)] if n == 0 else [(0.01, 0.99)]
        sandwich.append(_cmp(f"Z6.lo{n}", "SIGNED_ZETA", ">=", "SANDWICH_LO",
                             domain=domain, params={"n": n}))
        sandwich.append(_cmp(f"Z6.hi{n}", "SIGNED_ZETA", "<=", "SANDWICH_HI",
                             domain=domain, params={"n": n}))
    claims.append(_all(
        "Z6", '"Using the inequality of Lavrik"', "the zeta^(n) sandwich, n <= 3", sandwich,
        notes="n = 0 is scanned on (0.01, 0.75); the upper bound crosses zeta near 0.78",
    ))

    claims += [
        _all("Z7", 'pr6(2), "g(1/x) = -g(x)"', "G_ZETA sign pattern and antisymmetry", [
            _cmp("Z7.neg", "G_ZETA", "<", value=0.0, domain=UNIT),
            _cmp("Z7.pos", "G_ZETA", ">", value=0.0, domain=[(1.0, 1e4)]),
            _limit("Z7.one", "G_ZETA", 1.0, "left", 0.0),
            _identity(
                "Z7.anti", "G_ZETA", rhs="G_ZETA", rhs_arg="reciprocal", rhs_sign=-1.0,
                domain=[(0.01, 0.99)], tol=1e-10,
            ),
        ]),
        _all("Z8", '"strictly concave on (0,1) and strictly convex"',
             "zeta concave on (0,1), convex on (1,inf)", [
            _shape("Z8.concave", "ZETA", "CONCAVE", UNIT),
            _shape("Z8.convex", "ZETA", "CONVEX", [(1.0, 20.0)]),
        ]),
        _all("Z9", 'lem01, "((x-1) log(4) + 1)"', "T_LEM <= 0 and S_LEM <= 0 on [2, 50]", [
            _cmp("Z9.t", "T_LEM", "<=", value=0.0, domain=[(2.0, 50.0)],
                 spacing="linear", eps=0.0),
        ] + [
            _cmp(f"Z9.s{i}", "S_LEM", "<=", value=0.0, domain=[(2.0, 50.0)],
                 spacing="linear", eps=0.0, params={"a": a})
            for i, a in enumerate((2.0, math.e, 3.0, 10.0))
        ]),
        _cmp(
            "Z10", "THETA_BOUND", "<", value=0.0, domain=[(0.0, 0.99)],
            anchor='lem0(1), "zeta\'(x) < -1/(1-x)^2 - gamma_1 - gamma_2 (1-x)"',
            statement="zeta'(x) < -1/(1-x)^2 - gamma_1 - gamma_2(1-x) on (0,1)",
            notes="margin is of order (1-x)^2; scan stops at 0.99",
        ),
        _cmp(
            "Z11", "TAU_BOUND", ">", value=0.0, domain=[(1.05, 2.0)],
            spacing="linear", eps=0.0,
            anchor='lem0(2), "zeta\'(x) > -1/(x-1)^2 + gamma_2 (x-1) - gamma_1 - gamma_3 (x-1)^2/2"',
            statement="zeta' lower bound on (1, 2]",
            notes="margin is of order (x-1)^3; scan starts at 1.05",
        ),
        _all("Z12", 'lem0(3), "-zeta\'(x) <="', "-zeta'(x) <= ZP_UPPER3(x) on [1.05, 50]", [
            _cmp("Z12.base3", "NEG_ZETA1", "<=", "ZP_UPPER3", domain=[(1.05, 50.0)],
                 spacing="linear", eps=0.0),
            _cmp("Z12.base4", "NEG_ZETA1", "<=", "ZP_UPPER4", domain=[(1.05, 50.0)],
                 spacing="linear", eps=0.0, advisory=True),
        ], notes="the base-4 statement is recorded but not required"),
        _all("Z13", 'cor1, "zeta\'\'(x) > gamma_2 - 2/(1-x)^3"', "the three corollary bounds", [
            _cmp("Z13.a", "COR1_A_GAP", ">", value=0.0, domain=UNIT),
            _cmp("Z13.b", "COR1_B_GAP", ">", value=0.0, domain=[(0.0, 0.95)]),
            _cmp("Z13.c", "COR1_C_GAP", ">", value=0.0, domain=UNIT),
        ]),
        _shape(
            "Z14", "LOGABS_ZETA", "CONVEX", UNIT,
            anchor='lem1, "strictly logarithmic convex"', statement="log|zeta| convex on (0,1)",
        ),
        _cmp(
            "Z15", "ZETA_REFL_PROD", ">", value=zeta_half * zeta_half,
            domain=OFF_HALF, spacing="linear",
            anchor='lem1, "zeta(x) zeta(1-x) > (zeta(1/2))^2"',
            statement="zeta(x) zeta(1-x) > zeta(1/2)^2 off 1/2",
        ),
        _shape(
            "Z16", "RECIP_ZETA", "CONCAVE", UNIT,
            anchor='"1/zeta is strictly concave on (0,1)"', statement="1/zeta concave on (0,1)",
        ),
        _all("Z17", '"zeta(1/2) < H(zeta(x), zeta(1-x)) < -1"', "zeta(1/2) < HM_ZETA_REFL < -1", [
            _cmp("Z17.upper", "HM_ZETA_REFL", "<", value=-1.0, domain=UNIT, spacing="linear"),
            _cmp("Z17.lower", "HM_ZETA_REFL", ">", value=zeta_half,
                 domain=OFF_HALF, spacing="linear"),
            _limit("Z17.zero", "HM_ZETA_REFL", 0.0, "right", -1.0),
            _limit("Z17.one", "HM_ZETA_REFL", 1.0, "left", -1.0),
        ]),
        _all("Z18", '"log 4/(1+log 4) < H(eta(x), eta(1-x))"',
             "log4/(1+log4) < HM_ETA_REFL < (1-sqrt 2) zeta(1/2)", [
            _cmp("Z18.lower", "HM_ETA_REFL", ">", value=log4 / (1.0 + log4),
                 domain=UNIT, spacing="linear"),
            _cmp("Z18.upper", "HM_ETA_REFL", "<", value=eta_half,
                 domain=OFF_HALF, spacing="linear"),
            _identity("Z18.half", "HM_ETA_REFL", value=(1.0 - math.sqrt(2.0)) * zeta_half,
                      points=[0.5], tol=1e-12),
            _limit("Z18.zero", "HM_ETA_REFL", 0.0, "right", log4 / (1.0 + log4)),
        ]),
        _all("Z19", 'pr4, "2 gamma - 1 < zeta(s) + zeta(1/s) < 1/2"',
             "2 gamma - 1 < PHI_SUM < 1/2, decreasing on (0,1), increasing on (1,inf)", [
            _cmp("Z19.lower", "PHI_SUM", ">", value=2 * gamma - 1, domain=POS),
            _cmp("Z19.upper", "PHI_SUM", "<", value=0.5, domain=[(0.0, 1.0), (1.0, 1e4)]),
            _shape("Z19.dec", "PHI_SUM", "MONOTONE", [(0.0, 0.999)], direction=-1),
            _shape("Z19.inc", "PHI_SUM", "MONOTONE", [(1.001, 1e3)]),
            _limit("Z19.one", "PHI_SUM", 1.0, "left", 2 * gamma - 1),
        ]),
    ]

    hab = [(0.0, 30.0)]
    claims += [
        _all("Z20", 'pr4(2), "strictly log-concave on (0,+inf)"',
             "G1 log-concave; VARPHI_RATIO concave; H_AB log-concavity by (a, b)", [
            _shape("Z20.g1", "LOG_G1", "CONCAVE", hab),
            _shape("Z20.varphi", "VARPHI_RATIO", "CONCAVE", hab),
            _shape("Z20.h01", "LOG_H_AB", "CONCAVE", hab, params={"a": 0.0, "b": 1.0}),
            _shape("Z20.h12", "LOG_H_AB", "CONCAVE", [(0.0, 1.0), (1.0, 30.0)],
                   params={"a": 1.0, "b": 2.0}),
            _shape("Z20.h0half", "LOG_H_AB", "CONCAVE", UNIT,
                   params={"a": 0.0, "b": 0.5}, negate=True),
            _shape("Z20.hm12", "LOG_H_AB", "CONCAVE", UNIT,
                   params={"a": -1.0, "b": 2.0}, negate=True),
        ], notes="the excluded pairs are scanned on (0,1), where the violation sits"),
        _all("Z21", 'pr4(2), "1/(2x(1-x)) < zeta(x) zeta(1-x)"',
             "G2 up/down around 1/2 and the reflection-product bounds", [
            _shape("Z21.inc", "G2", "MONOTONE", [(0.0, 0.5)], spacing="linear"),
            _shape("Z21.dec", "G2", "MONOTONE", [(0.5, 1.0)], direction=-1, spacing="linear"),
            _cmp("Z21.lower", "ZETA_REFL_PROD", ">", "ZETA_REFL_LOWER", domain=UNIT,
                 spacing="linear"),
            _cmp("Z21.upper", "ZETA_REFL_PROD", "<", "ZETA_REFL_UPPER", domain=OFF_HALF,
                 spacing="linear"),
        ]),
        _all("Z22", 'Corollary, "log(2 pi) - 1 + 1/(1-x) > zeta\'(x)/zeta(x) > 1/(1-x)"',
             "the zeta'/zeta bounds at b = 2 and a in {0, 1}", [
            _cmp("Z22.lower_a0", "LOGDERIV_LOWER_GAP", ">", value=0.0,
                 domain=[(1.0, 1e4)], params={"a": 0.0, "b": 2.0}),
            _cmp("Z22.lower_a1", "LOGDERIV_LOWER_GAP", ">", value=0.0,
                 domain=[(1.0, 1e4)], params={"a": 1.0, "b": 2.0}),
            _cmp("Z22.upper_a0", "LOGDERIV_UPPER_GAP", ">", value=0.0,
                 domain=[(1.0, 1e4)], params={"a": 0.0}),
            _cmp("Z22.upper_a1", "LOGDERIV_UPPER_GAP", ">", value=0.0,
                 domain=[(1.0, 1e4)], params={"a": 1.0}),
            _cmp("Z22.g1", "LOGDERIV_G1", ">", value=0.0, domain=[(0.0, 1e4)]),
            _cmp("Z22.twopi", "LOGDERIV_2PI_GAP", ">", value=0.0, domain=[(0.0, 1e4)]),
        ]),
        _all("Z23", 'pr3, "zeta(1+s) zeta(1-s) < -pi^2/12"',
             "U_PROD < -1/2 with monotonicity; H_PROD increasing and < -pi^2/12", [
            _cmp("Z23.u", "U_PROD", "<", value=-0.5, domain=[(0.0, 1.0), (1.0, 1e4)]),
            _shape("Z23.u_dec", "U_PROD", "MONOTONE", UNIT, direction=-1),
            _shape("Z23.u_inc", "U_PROD", "MONOTONE", BEYOND_ONE),
            _cmp("Z23.h", "H_PROD", "<", value=-math.pi**2 / 12, domain=UNIT),
            _shape("Z23.h_inc", "H_PROD", "MONOTONE", UNIT),
        ]),
        Claim(
            id="Z24", kind="TABLE_BOUNDS", anchor='"Many bounds are given for the Stieltjes"',
            statement="|gamma_n| within the factorial and Lavrik bound families",
        ),
        _cmp(
            "Z25", "ZETA1_LOGCONVEX_GAP", ">", value=0.0, domain=UNIT,
            anchor="lem1 proof, log-convexity step",
            statement="zeta'(x) > -1/(1-x)^2 + gamma_2 x + 1 - log(2 pi)/2 on (0,1)",
            notes="margin starts at 0 at x = 0+ and increases",
        ),
        _all("Z26", "boundary values used across the zeta proofs", "eight one-sided limits", [
            _limit("Z26.zeta", "ZETA", 0.0, "right", -0.5),
            _limit("Z26.zeta1", "ZETA1", 0.0, "right", -0.5 * LOG_2PI),
            _limit("Z26.logderiv", "ZETA_LOGDERIV", 0.0, "right", LOG_2PI),
            _limit("Z26.logderiv_g1", "LOGDERIV_G1", 1.0, "left", gamma),
            _limit("Z26.u_prod", "U_PROD", 0.0, "right", -0.5),
            _limit("Z26.h_prod", "H_PROD", 1.0, "left", -math.pi**2 / 12),
            _limit("Z26.hm_inv", "HM_ZETA_INV", 0.0, "right", -2.0),
            _limit("Z26.g_zeta", "G_ZETA", 1.0, "left", 0.0),
        ]),
        _all("L1", "pr4(2) proof, expansion of the ratio at 1",
             "VARPHI_RATIO and its first two derivatives at x = 1", [
            _identity("L1.value", "VARPHI_RATIO", value=-math.log(LOG2), points=[1.0], tol=1e-4),
            _identity("L1.d1", "VARPHI_RATIO_D1", value=LOG2 / 2, points=[1.0], tol=1e-4),
            _identity("L1.d2", "VARPHI_RATIO_D2", value=-(LOG2**2) / 12, points=[1.0], tol=1e-4),
        ], notes="values are -log log 2, log(2)/2 and -log(2)^2/12"),
    ]
    return claims


# ----------------------------------------------------------------------
# Spot values and certificates
# ----------------------------------------------------------------------


def _spot_claims(c: ExpressionCatalog) -> List[Claim]:
    gamma, g1, g2, g3 = c.g[0], c.g[1], c.g[2], c.g[3]
    theta2 = -gamma - 3 * LOG2 - math.pi / 2 + 4
    return [
        _all("X1", 'pr6 proof, "g(x) <= ... := f(1/x)"', "auxiliary spot values", [
            _identity("X1.theta2", "THETA", value=-0.227, points=[2.0], tol=2e-3),
            _identity("X1.theta2_exact", "THETA", value=theta2, points=[2.0], tol=1e-12),
            _identity("X1.g0", "GB_QUINTIC", value=-0.677849, points=[0.0], tol=1e-5),
            _identity("X1.g1", "GB_QUINTIC1", value=-2.52896, points=[0.0], tol=1e-4),
            _identity("X1.g2", "GB_QUINTIC2", value=-11.11581, points=[0.0], tol=3e-4),
            _identity("X1.p1_slope", "P1_POLY1", value=0.393, points=[2.0], tol=2e-3),
            _identity("X1.p1_slope_exact", "P1_POLY1", value=-5 * g1 - 3 * g2,
                      points=[2.0], tol=1e-12),
            _identity("X1.p1_max", "P1_CRITICAL_MAX", value=-0.535, points=[2.0], tol=2e-3),
            _identity("X1.v1", "V_POLY", value=-0.291, points=[1.0], tol=2e-3),
            _identity("X1.v1_exact", "V_POLY", value=4 * g1, points=[1.0], tol=1e-12),
            _identity("X1.dv1", "V_POLY1", value=-0.492, points=[1.0], tol=2e-3),
            _identity("X1.dv1_exact", "V_POLY1", value=6 * g1 + 6 * g2 + g3,
                      points=[1.0], tol=1e-12),
            _cmp("X1.f_bound", "G_ZETA", "<=", "F_BOUND", rhs_arg="reciprocal",
                 domain=[(0.0, 0.99)]),
        ]),
        _all("S1", "theta'' bound polynomial", "P < 0 on (0, 1]", [
            Claim(id="S1.P", kind="ROOT_COUNT", anchor="", poly_id="P",
                  bracket=(0.0, 1.0), expected_sign=-1),
        ]),
        _all("S2", "tau'' bound polynomial", "Q > 0 on (1, 2]", [
            Claim(id="S2.Q", kind="ROOT_COUNT", anchor="", poly_id="Q",
                  bracket=(1.0, 2.0), expected_sign=1),
        ]),
        _all("S3", "x^4 + 4x^2 - 1", "one root in (0, 1), at sqrt(sqrt 5 - 2)", [
            Claim(id="S3.count", kind="ROOT_COUNT", anchor="", poly_id="QUARTIC",
                  bracket=(0.0, 1.0), expected_count=1),
            Claim(id="S3.locate", kind="ROOT_LOCATE", anchor="", poly_id="QUARTIC",
                  bracket=(0.0, 1.0), expected=math.sqrt(math.sqrt(5.0) - 2.0), tol=1e-12),
        ]),
        _all("S4", "P1 cubic", "P1 < 0 on (2, inf); P1' has one root there, near 2.87", [
            Claim(id="S4.sign", kind="ROOT_COUNT", anchor="", poly_id="P1",
                  bracket=(2.0, None), expected_sign=-1),
            Claim(id="S4.critical", kind="ROOT_COUNT", anchor="", poly_id="P1",
                  derivative=1, bracket=(2.0, None), expected_count=1),
            Claim(id="S4.locate", kind="ROOT_LOCATE", anchor="", poly_id="P1",
                  derivative=1, bracket=(2.0, 50.0), expected=2.87, tol=1e-2),
        ]),
        _all("S5", "v cubic", "v < 0 and v' < 0 on (1, 2]; both roots of v' are negative", [
            Claim(id="S5.v", kind="ROOT_COUNT", anchor="", poly_id="V",
                  bracket=(1.0, 2.0), expected_sign=-1),
            Claim(id="S5.dv", kind="ROOT_COUNT", anchor="", poly_id="V",
                  derivative=1, bracket=(1.0, 2.0), expected_sign=-1),
            Claim(id="S5.dv_roots", kind="ROOT_COUNT", anchor="", poly_id="V",
                  derivative=1, bracket=(-100.0, 0.0), expected_count=2),
        ]),
        _all("S6", "theta'' bound polynomial, as printed", "printed P has a root in (0, 1)", [
            Claim(id="S6.printed", kind="ROOT_COUNT", anchor="", poly_id="P_PRINTED",
                  bracket=(0.0, 1.0), expected_count=1, count_relation=">="),
        ], notes="the printed remainder constants lack the pi^-9 scaling"),
    ]


def build_registry(catalog: Optional[ExpressionCatalog] = None) -> Dict[str, Claim]:
    """All claims keyed by id, in report order."""
    catalog = catalog or ExpressionCatalog()
    claims = _digamma_claims(catalog) + _zeta_claims(catalog) + _spot_claims(catalog)
    registry = {claim.id: claim for claim in claims}
    if tuple(registry) != CLAIM_IDS:
        raise RuntimeError(f"registry order drifted: {list(registry)}")
    logger.debug("registry built with %d claims", len(registry))
    return registry
