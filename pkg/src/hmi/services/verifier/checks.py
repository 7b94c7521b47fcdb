"""Grid checks behind every claim kind."""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import bisect

from hmi.config import Settings, get_settings
from hmi.errors import BracketError, CertificationFailure, DomainError
from hmi.schemas.claims import Claim, ClaimReport, GridSpec
from hmi.services.named_polys import build_named_poly, certify_sign
from hmi.services.poly import cauchy_bound, count_roots_in, isolate_roots
from hmi.services.stieltjes import lavrik_bound, stieltjes_bound
from hmi.services.verifier.catalog import ExpressionCatalog

logger = logging.getLogger(__name__)

ROOT_XTOL = 1e-12
GUARD_RADIUS = 1e-6
REFINE_POINTS = 17
# kernel values are accurate to a few ulps; difference quotients amplify this many
ROUNDING_ULPS = 16
# refined divided differences keep their rounding noise below this share of the margin
NOISE_SHARE = 0.05


@dataclass
class ScanResult:
    """Minimum of a margin function over a scan."""

    margin: float
    argmin: Optional[float]
    points: int
    notes: List[str] = field(default_factory=list)


def build_grid(g: GridSpec) -> np.ndarray:
    """Sample points in [a + eps, b - eps]."""
    lo, hi = g.a + g.endpoint_eps, g.b - g.endpoint_eps
    if g.spacing == "linear":
        return np.linspace(lo, hi, g.n)
    if g.spacing == "log":
        if lo <= 0.0:
            raise DomainError("log spacing needs a + eps > 0", {"a": g.a, "eps": g.endpoint_eps})
        return np.geomspace(lo, hi, g.n)
    if g.endpoint_eps <= 0.0:
        raise DomainError(
            f"{g.spacing} spacing needs endpoint_eps > 0", {"spacing": g.spacing}
        )
    offsets = np.geomspace(g.endpoint_eps, g.b - g.a - g.endpoint_eps, g.n)
    if g.spacing == "log_left":
        return g.a + offsets
    return (g.b - offsets)[::-1]


def _first_min(margins: np.ndarray, xs: np.ndarray) -> Tuple[float, float]:
    i = int(np.argmin(margins))  # first occurrence, xs ascending
    return float(margins[i]), float(xs[i])


def rounding_noise(scale: float, h: float, order: int) -> float:
    """Rounding error bound of a divided difference of the given order and step."""
    eps = ROUNDING_ULPS * float(np.finfo(float).eps)
    return (2.0 if order == 1 else 4.0) * eps * scale / h**order


def refine_step(
    xs: np.ndarray, f: np.ndarray, order: int, margin: float, floor: float
) -> Optional[float]:
    """Finest step whose divided-difference noise stays small against ``margin``.

    None when that step is no finer than the spacing of ``xs``.
    """
    f = f[np.isfinite(f)]
    if xs.size < 2 or f.size == 0:
        return None
    h = float(np.min(np.diff(xs)))
    scale = max(float(np.max(np.abs(f))), 1.0)
    budget = NOISE_SHARE * max(abs(margin), floor)
    step = max(h / 4.0, (rounding_noise(scale, 1.0, order) / budget) ** (1.0 / order))
    return step if step < h else None


class ClaimVerifier:
    """Runs claims against the expression catalog."""

    def __init__(
        self,
        catalog: Optional[ExpressionCatalog] = None,
        settings: Optional[Settings] = None,
        workers: Optional[int] = None,
    ):
        self.settings = settings or get_settings()
        self.catalog = catalog or ExpressionCatalog()
        self.floor = self.settings.margin_floor
        self.workers = max(1, workers if workers is not None else self.settings.workers)

    # ------------------------------------------------------------------
    # Evaluation helpers
    # ------------------------------------------------------------------

    def _eval(self, name: str, xs: np.ndarray, params) -> np.ndarray:
        if self.workers == 1 or xs.size < 4 * self.workers:
            return self.catalog.evaluate(name, xs, params)
        chunks = np.array_split(xs, self.workers)
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            parts = list(pool.map(lambda ch: self.catalog.evaluate(name, ch, params), chunks))
        return np.concatenate(parts)

    def _rhs(self, c: Claim, xs: np.ndarray) -> np.ndarray:
        if c.rhs is None:
            if c.rhs_value is None:
                raise DomainError(f"{c.id}: claim has no right-hand side", {"claim": c.id})
            return np.full_like(xs, c.rhs_value)
        if c.rhs_arg == "reciprocal":
            arg = 1.0 / xs
        elif c.rhs_arg == "reflect":
            arg = 1.0 - xs
        else:
            arg = xs
        return c.rhs_sign * self._eval(c.rhs, arg, c.params)

    def _finite(self, c: Claim, xs: np.ndarray, values: np.ndarray, name: str):
        """Drop non-finite points when the claim allows singular points."""
        bad = ~np.isfinite(values)
        if not np.any(bad):
            return xs, values, []
        if not c.skip_singular:
            x_bad = float(xs[bad][0])
            raise DomainError(
                f"{c.id}: {name} is not finite at x={x_bad!r}",
                {"claim": c.id, "expression": name, "x": x_bad},
            )
        return xs[~bad], values[~bad], [f"skipped {int(bad.sum())} singular point(s)"]

    def grid_spec(self, c: Claim, a: float, b: float) -> GridSpec:
        return GridSpec(
            a=a,
            b=b,
            n=self.settings.grid_n,
            spacing=c.spacing,
            endpoint_eps=self.settings.endpoint_eps if c.eps is None else c.eps,
            refine=self.settings.refine_depth,
        )

    def _guarded_grid(self, c: Claim, g: GridSpec) -> Tuple[np.ndarray, List[str]]:
        xs = build_grid(g)
        if c.singular_guard is None:
            return xs, []
        den = self._eval(c.singular_guard, xs, c.params)
        flips = np.nonzero(np.sign(den[:-1]) * np.sign(den[1:]) < 0)[0]
        if flips.size == 0:
            return xs, [f"{c.singular_guard} keeps its sign"]
        keep = np.ones_like(xs, dtype=bool)
        notes = []
        for i in flips:
            root = self.find_root(c.singular_guard, (float(xs[i]), float(xs[i + 1])), c.params)
            keep &= np.abs(xs - root) > GUARD_RADIUS
            notes.append(f"excised pole of {c.singular_guard} at x={root:.12g}")
        return xs[keep], notes

    # ------------------------------------------------------------------
    # POINTWISE / IDENTITY
    # ------------------------------------------------------------------

    def _pointwise_margins(self, c: Claim, xs: np.ndarray):
        lhs = self._eval(c.lhs, xs, c.params)
        xs, lhs, notes = self._finite(c, xs, lhs, c.lhs)
        rhs = self._rhs(c, xs)
        xs, rhs, more = self._finite(c, xs, rhs, c.rhs or "rhs")
        if more:
            lhs = self._eval(c.lhs, xs, c.params)
        if c.relation in ("<", "<="):
            margin = rhs - lhs
        elif c.relation in (">", ">="):
            margin = lhs - rhs
        else:
            margin = c.tol - np.abs(lhs - rhs)
        return xs, margin, notes + more

    def _refine(
        self,
        xs: np.ndarray,
        margins: np.ndarray,
        depth: int,
        margin_fn: Callable[[np.ndarray], Tuple[np.ndarray, np.ndarray]],
    ) -> ScanResult:
        """Zoom in around the worst point ``depth`` times."""
        best, best_x = _first_min(margins, xs)
        points = xs.size
        i = int(np.argmin(margins))
        lo, hi = xs[max(i - 1, 0)], xs[min(i + 1, xs.size - 1)]
        for _ in range(depth):
            if not hi > lo:
                break
            fine = np.linspace(lo, hi, REFINE_POINTS)
            fx, fm = margin_fn(fine)
            if fm.size == 0:
                break
            points += fx.size
            m, mx = _first_min(fm, fx)
            if m < best or (m == best and mx < best_x):
                best, best_x = m, mx
            j = int(np.argmin(fm))
            lo, hi = fx[max(j - 1, 0)], fx[min(j + 1, fx.size - 1)]
        return ScanResult(best, best_x, points)

    def check_pointwise(self, c: Claim, g: GridSpec) -> ClaimReport:
        """Minimum of (rhs - lhs) for < claims, (lhs - rhs) for >, over the grid."""
        if c.points:
            xs = np.asarray(sorted(c.points), dtype=float)
            notes: List[str] = []
        else:
            xs, notes = self._guarded_grid(c, g)
        if xs.size == 0:
            raise DomainError(f"{c.id}: empty grid", {"claim": c.id})
        xs, margins, more = self._pointwise_margins(c, xs)
        if margins.size == 0:
            raise DomainError(f"{c.id}: no finite grid point", {"claim": c.id})
        if c.points:
            m, mx = _first_min(margins, xs)
            scan = ScanResult(m, mx, xs.size)
        else:
            scan = self._refine(
                xs, margins, g.refine,
                lambda fine: self._pointwise_margins(c, fine)[:2],
            )
        scan.notes = notes + more
        return self._report(c, scan, g)

    # ------------------------------------------------------------------
    # MONOTONE / CONVEX / CONCAVE
    # ------------------------------------------------------------------

    def _difference_margins(self, c: Claim, xs: np.ndarray, order: int):
        f = self._eval(c.lhs, xs, c.params)
        xs, f, _ = self._finite(c, xs, f, c.lhs)
        if order == 1:
            slope = np.diff(f) / np.diff(xs)
            return xs[:-1], c.direction * slope
        h = np.diff(xs)
        slopes = np.diff(f) / h
        dd = 2.0 * np.diff(slopes) / (xs[2:] - xs[:-2])
        sign = 1.0 if c.kind == "CONVEX" else -1.0
        return xs[1:-1], sign * dd

    def _shape_check(self, c: Claim, g: GridSpec, order: int) -> ClaimReport:
        xs, notes = self._guarded_grid(c, g)
        if xs.size < order + 2:
            raise DomainError(f"{c.id}: grid too small", {"claim": c.id})
        at, margins = self._difference_margins(c, xs, order)
        best, best_x = _first_min(margins, at)
        points = xs.size
        # one refinement pass, no finer than rounding noise allows
        i = int(np.argmin(margins))
        k = int(np.searchsorted(xs, at[i]))
        left, right = max(k - 2, 0), min(k + 2, xs.size - 1)
        window = xs[left:right + 1]
        step = refine_step(
            window, self._eval(c.lhs, window, c.params), order, best, self.floor
        )
        if step is None:
            logger.debug("claim %s: refinement skipped at the rounding limit", c.id)
        else:
            n = int(math.ceil((xs[right] - xs[left]) / step)) + 1
            fine = np.linspace(xs[left], xs[right], n)
            if fine.size > order + 1:
                fat, fm = self._difference_margins(c, fine, order)
                points += fine.size
                m, mx = _first_min(fm, fat)
                if m < best or (m == best and mx < best_x):
                    best, best_x = m, mx
        return self._report(c, ScanResult(best, best_x, points, notes), g)

    def check_monotone(self, c: Claim, g: GridSpec) -> ClaimReport:
        """direction * (consecutive difference quotient), minimised."""
        return self._shape_check(c, g, 1)

    def check_convexity(self, c: Claim, g: GridSpec) -> ClaimReport:
        """Signed second divided differences, minimised."""
        return self._shape_check(c, g, 2)

    # ------------------------------------------------------------------
    # LIMIT
    # ------------------------------------------------------------------

    def approach_points(self, c: Claim) -> np.ndarray:
        k = np.arange(c.k_range[0], c.k_range[1] + 1, dtype=float)
        if c.side == "infinity":
            return 10.0**k
        step = 10.0 ** (-k)
        return c.endpoint + step if c.side == "right" else c.endpoint - step

    def check_limit(self, c: Claim) -> ClaimReport:
        """Errors along the approach must shrink and end within tol."""
        xs = self.approach_points(c)
        values = self._eval(c.lhs, xs, c.params)
        if not np.all(np.isfinite(values)):
            raise DomainError(f"{c.id}: {c.lhs} not finite on the approach", {"claim": c.id})
        last = float(values[-1])
        if c.expected is not None and math.isinf(c.expected) and c.expected < 0:
            monotone = bool(np.all(np.diff(values) < 0))
            margin = -1e6 - last
            ok = last < -1e6
        else:
            expected = float(c.expected)
            err = np.abs(values - expected)
            slack = 1e-12 * max(1.0, abs(expected))
            monotone = bool(np.all((err[1:] <= err[:-1]) | (err[1:] <= slack)))
            margin = c.tol - float(err[-1])
            ok = margin >= 0
        if not monotone:
            status = "inconclusive"
        else:
            status = "pass" if ok else "fail"
        if c.negate and status != "inconclusive":
            status = "fail" if status == "pass" else "pass"
        note = f"limit at {c.side} {c.endpoint if c.side != 'infinity' else ''}".rstrip()
        note += f": last value {last:.12g} at x={float(xs[-1]):.3g}"
        if not monotone:
            note += "; error sequence not monotone"
        return ClaimReport(
            claim_id=c.id,
            status=status,
            kind="LIMIT",
            domain=[float(xs[0]), float(xs[-1])],
            grid={"n": int(xs.size), "spacing": "geometric", "eps": float(abs(xs[-1] - (c.endpoint or 0.0)))},
            min_margin=margin,
            argmin_x=float(xs[-1]),
            points=int(xs.size),
            paper_ref=c.anchor,
            notes=note,
        )

    # ------------------------------------------------------------------
    # Roots
    # ------------------------------------------------------------------

    def find_root(self, name: str, bracket: Tuple[float, float], params=None) -> float:
        """Bisection root of a catalog expression to 1e-12."""
        a, b = bracket
        fa = self.catalog.aux_eval(name, a, params)
        fb = self.catalog.aux_eval(name, b, params)
        if fa == 0.0:
            return a
        if fb == 0.0:
            return b
        if fa * fb > 0:
            raise BracketError(
                f"{name} has no sign change on ({a}, {b})",
                {"expression": name, "a": a, "b": b, "fa": fa, "fb": fb},
            )
        return float(
            bisect(lambda t: self.catalog.aux_eval(name, t, params), a, b, xtol=ROOT_XTOL)
        )

    def check_root_locate(self, c: Claim) -> ClaimReport:
        a, b = c.bracket
        if c.poly_id is not None:
            poly = build_named_poly(c.poly_id, self.catalog.table).poly
            for _ in range(c.derivative):
                poly = poly.derivative()
            brackets = isolate_roots(poly, a, b, Fraction(1, 10**15))
            if len(brackets) != 1:
                raise BracketError(
                    f"{c.poly_id} has {len(brackets)} roots in ({a}, {b}]",
                    {"poly_id": c.poly_id, "roots": len(brackets)},
                )
            root = float((brackets[0][0] + brackets[0][1]) / 2)
        else:
            root = self.find_root(c.lhs, (a, b), c.params)
        margins = []
        notes = [f"root {root:.15g}"]
        if c.expected is not None:
            margins.append(c.tol - abs(root - c.expected))
            notes.append(f"expected {c.expected:.15g}")
        if c.locate_upper is not None:
            margins.append(c.locate_upper - root)
            notes.append(f"below {c.locate_upper:.12g}")
        margin = min(margins) if margins else 0.0
        status = "pass" if margin >= 0 else "fail"
        return ClaimReport(
            claim_id=c.id,
            status=status,
            kind="ROOT_LOCATE",
            domain=[a, b],
            min_margin=margin,
            argmin_x=root,
            points=1,
            paper_ref=c.anchor,
            notes="; ".join(notes),
        )

    def _upper(self, poly) -> Fraction:
        """Finite cut-off standing in for +infinity."""
        return max(
            Fraction(self.settings.sturm_upper), Fraction(math.ceil(cauchy_bound(poly)))
        )

    def check_root_count(self, c: Claim) -> ClaimReport:
        a, b = c.bracket
        enclosure = build_named_poly(c.poly_id, self.catalog.table)
        if c.derivative:
            poly = enclosure.poly
            for _ in range(c.derivative):
                poly = poly.derivative()
            # each derivative scales coefficients by at most the degree
            err = enclosure.coeff_abs_err * enclosure.poly.degree**c.derivative
            enclosure = enclosure.model_copy(update={"poly": poly, "coeff_abs_err": err})
        domain = [float(a), float(self._upper(enclosure.poly)) if b is None else float(b)]
        if c.expected_sign is not None:
            try:
                cert = certify_sign(enclosure, a, b, c.expected_sign)
            except CertificationFailure as exc:
                return ClaimReport(
                    claim_id=c.id, status="fail", kind="ROOT_COUNT", domain=domain,
                    min_margin=-1.0, paper_ref=c.anchor, notes=exc.message,
                )
            status = "pass" if cert.robust else "fail"
            notes = (
                f"{cert.method} certificate: 0 roots, sign {cert.sign:+d}, "
                f"margin {cert.margin:.3e} vs perturbation {cert.perturbation_bound:.3e} "
                f"({cert.status})"
            )
            if cert.upper_used:
                notes += f", cut at {cert.upper_used}"
            return ClaimReport(
                claim_id=c.id, status=status, kind="ROOT_COUNT", domain=domain,
                min_margin=cert.margin - cert.perturbation_bound,
                paper_ref=c.anchor, notes=notes, points=200,
            )
        upper = b if b is not None else self._upper(enclosure.poly)
        count = count_roots_in(enclosure.poly, a, upper, Fraction(self.settings.sturm_eps))
        if c.count_relation == ">=":
            ok = count >= c.expected_count
        else:
            ok = count == c.expected_count
        return ClaimReport(
            claim_id=c.id,
            status="pass" if ok else "fail",
            kind="ROOT_COUNT",
            domain=domain,
            min_margin=1.0 if ok else -float(abs(count - c.expected_count) or 1),
            paper_ref=c.anchor,
            notes=f"{count} distinct root(s) in ({a}, {upper}], expected {c.count_relation} {c.expected_count}",
        )

    # ------------------------------------------------------------------
    # Stieltjes bound table
    # ------------------------------------------------------------------

    def check_table_bounds(self, c: Claim) -> ClaimReport:
        table = self.catalog.table
        best, best_n, worst_family = math.inf, None, ""
        for n in range(1, table.max_index + 1):
            value = abs(table.gamma[n]) + table.prec[n]
            for family, bound in (("factorial", stieltjes_bound(n)), ("lavrik", lavrik_bound(n))):
                m = bound - value
                if m < best:
                    best, best_n, worst_family = m, n, family
        return ClaimReport(
            claim_id=c.id,
            status="pass" if best > 0 else "fail",
            kind="TABLE_BOUNDS",
            domain=[1.0, float(table.max_index)],
            min_margin=best,
            argmin_x=float(best_n),
            points=2 * table.max_index,
            paper_ref=c.anchor,
            notes=f"tightest: {worst_family} bound at n={best_n}",
        )

    # ------------------------------------------------------------------
    # Dispatch
    # ------------------------------------------------------------------

    def _report(self, c: Claim, scan: ScanResult, g: Optional[GridSpec]) -> ClaimReport:
        if c.kind == "IDENTITY":
            ok = scan.margin >= 0.0
        elif not c.strict:
            ok = scan.margin >= -self.floor
        else:
            ok = scan.margin > self.floor
        notes = list(scan.notes)
        margin = scan.margin
        if c.negate:
            ok = not ok
            margin = -margin
            notes.append("expected violation")
        grid = {}
        if g is not None and not c.points:
            grid = {"n": g.n, "spacing": g.spacing, "eps": g.endpoint_eps}
        domain = [g.a, g.b] if g is not None and not c.points else [min(c.points), max(c.points)]
        return ClaimReport(
            claim_id=c.id,
            status="pass" if ok else "fail",
            kind=c.kind,
            domain=domain,
            grid=grid,
            min_margin=margin,
            argmin_x=scan.argmin,
            points=scan.points,
            paper_ref=c.anchor,
            notes="; ".join(notes),
        )

    def _scan(self, c: Claim) -> ClaimReport:
        if c.points:
            return self.check_pointwise(c, None)  # type: ignore[arg-type]
        reports = []
        for a, b in c.domain:
            g = self.grid_spec(c, a, b)
            if c.kind in ("POINTWISE", "IDENTITY"):
                reports.append(self.check_pointwise(c, g))
            elif c.kind == "MONOTONE":
                reports.append(self.check_monotone(c, g))
            else:
                reports.append(self.check_convexity(c, g))
        return combine(c, reports)

    def run_claim(self, c: Claim) -> ClaimReport:
        """Evaluate one claim, compound or not."""
        if c.parts:
            report = combine(c, [self.run_claim(p) for p in c.parts], parts=c.parts)
        elif c.kind == "LIMIT":
            report = self.check_limit(c)
        elif c.kind == "ROOT_LOCATE":
            report = self.check_root_locate(c)
        elif c.kind == "ROOT_COUNT":
            report = self.check_root_count(c)
        elif c.kind == "TABLE_BOUNDS":
            report = self.check_table_bounds(c)
        else:
            report = self._scan(c)
        logger.debug(
            "claim %s: %s margin=%.3e at x=%s",
            c.id,
            report.status,
            report.min_margin,
            report.argmin_x,
        )
        return report


def combine(
    c: Claim, reports: Sequence[ClaimReport], parts: Optional[Sequence[Claim]] = None
) -> ClaimReport:
    """Fold part reports into one: worst status, smallest margin, ties to smaller x."""
    if len(reports) == 1 and parts is None:
        return reports[0]
    counted = [
        r for i, r in enumerate(reports) if parts is None or not parts[i].advisory
    ]
    statuses = {r.status for r in counted}
    if "fail" in statuses:
        status = "fail"
    elif "inconclusive" in statuses:
        status = "inconclusive"
    else:
        status = "pass"
    pool = counted or list(reports)
    worst = min(
        pool,
        key=lambda r: (r.min_margin, math.inf if r.argmin_x is None else r.argmin_x),
    )
    lows = [r.domain[0] for r in reports if r.domain]
    highs = [r.domain[1] for r in reports if r.domain]
    notes = []
    for i, r in enumerate(reports):
        label = parts[i].id if parts is not None else f"[{r.domain[0]:.6g}, {r.domain[1]:.6g}]"
        flag = " (advisory)" if parts is not None and parts[i].advisory else ""
        detail = f": {r.notes}" if r.notes else ""
        notes.append(f"{label}{flag} {r.status} margin={r.min_margin:.3e}{detail}")
    return ClaimReport(
        claim_id=c.id,
        status=status,
        kind=c.kind,
        domain=[min(lows), max(highs)] if lows else [],
        grid=worst.grid,
        min_margin=worst.min_margin,
        argmin_x=worst.argmin_x,
        points=sum(r.points for r in reports),
        paper_ref=c.anchor,
        notes=" | ".join(notes),
    )
