"""
Unit tests for the grid checks, on claims built from simple catalog expressions.
"""

import math

import numpy as np
import pytest

from hmi.errors import BracketError, DomainError
from hmi.schemas.claims import Claim, ClaimReport, GridSpec
from hmi.services.verifier.checks import (
    ClaimVerifier,
    build_grid,
    combine,
    refine_step,
    rounding_noise,
)


def _claim(**kwargs) -> Claim:
    kwargs.setdefault("id", "T1")
    kwargs.setdefault("kind", "POINTWISE")
    kwargs.setdefault("anchor", "test")
    return Claim(**kwargs)


# ----------------------------------------------------------------------
# Grids
# ----------------------------------------------------------------------


def test_linear_grid():
    xs = build_grid(GridSpec(a=0.0, b=1.0, n=5, endpoint_eps=0.1))
    np.testing.assert_allclose(xs, [0.1, 0.3, 0.5, 0.7, 0.9])


def test_log_grid_needs_positive_start():
    xs = build_grid(GridSpec(a=1.0, b=100.0, n=3, spacing="log", endpoint_eps=0.0))
    np.testing.assert_allclose(xs, [1.0, 10.0, 100.0])
    with pytest.raises(DomainError):
        build_grid(GridSpec(a=0.0, b=1.0, n=3, spacing="log", endpoint_eps=0.0))


def test_one_sided_log_grids():
    left = build_grid(GridSpec(a=0.0, b=1.0, n=50, spacing="log_left", endpoint_eps=1e-6))
    right = build_grid(GridSpec(a=0.0, b=1.0, n=50, spacing="log_right", endpoint_eps=1e-6))
    for xs in (left, right):
        assert np.all(np.diff(xs) > 0)
        assert xs[0] == pytest.approx(1e-6) and xs[-1] == pytest.approx(1.0 - 1e-6)
    # clustered at the named end
    assert left[1] - left[0] < left[-1] - left[-2]
    assert right[-1] - right[-2] < right[1] - right[0]
    with pytest.raises(DomainError):
        build_grid(GridSpec(a=0.0, b=1.0, n=5, spacing="log_right", endpoint_eps=0.0))


def test_empty_grid_interval_rejected():
    with pytest.raises(ValueError):
        GridSpec(a=1.0, b=1.0)


# ----------------------------------------------------------------------
# POINTWISE / IDENTITY
# ----------------------------------------------------------------------


def test_pointwise_pass(verifier):
    """2x/(1+x^2) < 1.5 with the worst point at x=1."""
    c = _claim(lhs="HM_RECIP", rhs_value=1.5, domain=[(0.1, 10.0)], spacing="log")
    report = verifier.run_claim(c)
    assert report.status == "pass"
    assert report.min_margin == pytest.approx(0.5, abs=1e-6)
    assert report.argmin_x == pytest.approx(1.0, abs=1e-2)
    assert report.grid["n"] == verifier.settings.grid_n


def test_pointwise_fail(verifier):
    c = _claim(lhs="HM_RECIP", rhs_value=0.9, domain=[(0.1, 10.0)], spacing="log")
    report = verifier.run_claim(c)
    assert report.status == "fail"
    assert report.min_margin == pytest.approx(-0.1, abs=1e-6)


def test_margin_floor_separates_strict_and_non_strict(verifier):
    """1 - 2x/(1+x^2) = (x-1)^2/(1+x^2) touches zero at x=1."""
    loose = _claim(lhs="HM_RECIP", relation="<=", rhs_value=1.0, domain=[(0.5, 2.0)])
    strict = loose.model_copy(update={"relation": "<"})
    assert verifier.run_claim(loose).status == "pass"
    report = verifier.run_claim(strict)
    assert report.status == "fail"
    assert abs(report.min_margin) <= verifier.floor


def test_greater_than_relation(verifier):
    c = _claim(lhs="PSI", relation=">", rhs_value=0.0, domain=[(1.5, 10.0)])
    report = verifier.run_claim(c)
    assert report.status == "pass"
    assert report.argmin_x == pytest.approx(1.5 + verifier.settings.endpoint_eps)


def test_identity_against_reciprocal_argument(verifier):
    c = _claim(
        kind="IDENTITY", lhs="THETA", rhs="THETA", rhs_arg="reciprocal",
        relation="=", tol=1e-10, domain=[(0.1, 10.0)], spacing="log",
    )
    report = verifier.run_claim(c)
    assert report.status == "pass"
    assert 0.0 <= report.min_margin <= 1e-10


def test_identity_at_points(verifier):
    c = _claim(kind="IDENTITY", lhs="PSI", relation="=", rhs_value=0.0, points=[2.0], tol=1e-3)
    report = verifier.run_claim(c)
    assert report.status == "fail"
    assert report.domain == [2.0, 2.0]
    assert report.min_margin == pytest.approx(1e-3 - (1 - 0.5772156649015329), abs=1e-12)


def test_negated_claim_passes_on_violation(verifier):
    c = _claim(lhs="HM_RECIP", rhs_value=0.9, domain=[(0.1, 10.0)], spacing="log", negate=True)
    report = verifier.run_claim(c)
    assert report.status == "pass"
    assert report.min_margin == pytest.approx(0.1, abs=1e-6)
    assert "expected violation" in report.notes


def test_claim_without_rhs(verifier):
    with pytest.raises(DomainError):
        verifier.run_claim(_claim(lhs="PSI", domain=[(1.0, 2.0)]))


def test_non_finite_values_are_reported(verifier):
    c = _claim(lhs="PSI_OVER_LOG", rhs_value=10.0, points=[1.0, 2.0])
    with pytest.raises(DomainError) as exc:
        verifier.run_claim(c)
    assert exc.value.details["expression"] == "PSI_OVER_LOG"
    skipping = c.model_copy(update={"skip_singular": True})
    report = verifier.run_claim(skipping)
    assert report.status == "pass"
    assert "skipped 1 singular point" in report.notes


# ----------------------------------------------------------------------
# Shape checks
# ----------------------------------------------------------------------


def test_monotone_and_concave(verifier):
    increasing = _claim(kind="MONOTONE", lhs="PSI", relation=">", domain=[(0.1, 10.0)],
                        spacing="log", direction=1)
    assert verifier.run_claim(increasing).status == "pass"
    decreasing = increasing.model_copy(update={"direction": -1})
    assert verifier.run_claim(decreasing).status == "fail"
    concave = _claim(kind="CONCAVE", lhs="PSI", relation=">", domain=[(0.1, 10.0)], spacing="log")
    assert verifier.run_claim(concave).status == "pass"
    convex = concave.model_copy(update={"kind": "CONVEX"})
    assert verifier.run_claim(convex).status == "fail"


# ----------------------------------------------------------------------
# LIMIT
# ----------------------------------------------------------------------


def test_limit_pass_and_fail(verifier):
    c = _claim(kind="LIMIT", lhs="HM_RECIP", side="infinity", expected=0.0, tol=1e-4)
    report = verifier.run_claim(c)
    assert report.status == "pass"
    assert report.argmin_x == 1e6
    tight = c.model_copy(update={"tol": 1e-7})
    assert verifier.run_claim(tight).status == "fail"


def test_limit_with_growing_error_is_inconclusive(verifier):
    c = _claim(kind="LIMIT", lhs="HM_RECIP", side="infinity", expected=0.5, tol=1e-4)
    report = verifier.run_claim(c)
    assert report.status == "inconclusive"
    assert "not monotone" in report.notes
    negated = c.model_copy(update={"negate": True})
    assert verifier.run_claim(negated).status == "inconclusive"


def test_limit_to_minus_infinity(verifier):
    c = _claim(kind="LIMIT", lhs="PSI", side="right", endpoint=0.0, expected=-math.inf)
    report = verifier.run_claim(c)
    assert report.status == "pass"
    assert report.argmin_x == pytest.approx(1e-6)


# ----------------------------------------------------------------------
# Roots
# ----------------------------------------------------------------------


def test_find_root(verifier, oracle_values):
    root = verifier.find_root("PSI", (1.0, 2.0))
    assert root == pytest.approx(oracle_values["digamma_zero"], abs=1e-11)
    with pytest.raises(BracketError):
        verifier.find_root("PSI", (2.0, 3.0))


def test_root_locate_by_bisection(verifier):
    c = _claim(kind="ROOT_LOCATE", lhs="PSI", bracket=(1.0, 2.0), expected=1.4616, tol=1e-4,
               locate_upper=1.5)
    report = verifier.run_claim(c)
    assert report.status == "pass"
    assert report.argmin_x == pytest.approx(1.4616321449683623, abs=1e-11)


def test_root_count_on_quartic(verifier):
    c = _claim(kind="ROOT_COUNT", poly_id="QUARTIC", bracket=(0.0, 1.0), expected_count=1)
    assert verifier.run_claim(c).status == "pass"
    wrong = c.model_copy(update={"expected_count": 2})
    report = verifier.run_claim(wrong)
    assert report.status == "fail"
    assert report.min_margin == -1.0


# ----------------------------------------------------------------------
# Combination and workers
# ----------------------------------------------------------------------


def _report(status: str, margin: float, x: float) -> ClaimReport:
    return ClaimReport(
        claim_id="T1", status=status, kind="POINTWISE", domain=[x - 1, x + 1],
        min_margin=margin, argmin_x=x, points=10,
    )


def test_combine_ties_go_to_smaller_x():
    c = _claim(lhs="PSI", rhs_value=0.0)
    merged = combine(c, [_report("pass", 0.5, 3.0), _report("pass", 0.5, 2.0)])
    assert merged.argmin_x == 2.0
    assert merged.points == 20
    assert merged.domain == [1.0, 4.0]


def test_combine_worst_status():
    c = _claim(lhs="PSI", rhs_value=0.0)
    reports = [_report("pass", 0.5, 1.0), _report("inconclusive", 0.1, 2.0)]
    assert combine(c, reports).status == "inconclusive"
    reports.append(_report("fail", -0.1, 3.0))
    assert combine(c, reports).status == "fail"


def test_advisory_parts_do_not_fail_the_claim():
    parts = [
        _claim(id="T1.a", lhs="PSI", rhs_value=0.0),
        _claim(id="T1.b", lhs="PSI", rhs_value=0.0, advisory=True),
    ]
    c = _claim(parts=parts)
    merged = combine(c, [_report("pass", 0.5, 1.0), _report("fail", -1.0, 2.0)], parts=parts)
    assert merged.status == "pass"
    assert merged.min_margin == 0.5
    assert "T1.b (advisory) fail" in merged.notes


def test_compound_claim(verifier):
    parts = [
        _claim(id="T1.lo", lhs="HM_RECIP", relation=">", rhs_value=0.0, domain=[(0.1, 10.0)]),
        _claim(id="T1.hi", lhs="HM_RECIP", rhs_value=1.5, domain=[(0.1, 10.0)]),
    ]
    report = verifier.run_claim(_claim(parts=parts))
    assert report.status == "pass"
    assert report.notes.startswith("T1.lo pass")


def test_results_do_not_depend_on_workers(catalog, settings):
    c = _claim(lhs="THETA", rhs_value=1.0, domain=[(0.1, 0.9), (1.1, 10.0)], spacing="log")
    one = ClaimVerifier(catalog=catalog, settings=settings, workers=1).run_claim(c)
    four = ClaimVerifier(catalog=catalog, settings=settings, workers=4).run_claim(c)
    assert one.model_dump() == four.model_dump()


# ----------------------------------------------------------------------
# Refinement step
# ----------------------------------------------------------------------


def test_second_differences_drown_in_rounding_at_small_steps():
    assert rounding_noise(1.0, 1e-7, 2) > 1.0
    assert rounding_noise(1.0, 1e-2, 2) < 1e-9


def test_refine_step_stops_at_rounding_limit():
    xs = 1e-4 + 5e-7 * np.arange(5)
    assert refine_step(xs, np.full(5, -0.69), 2, 0.58, 1e-9) is None


def test_refine_step_zooms_on_coarse_grids():
    xs = np.linspace(0.0, 1.0, 5)
    assert refine_step(xs, np.ones(5), 2, 0.5, 1e-9) == pytest.approx(0.0625)


def test_refine_step_ignores_non_finite_values():
    xs = np.linspace(0.0, 1.0, 3)
    assert refine_step(xs, np.array([np.nan, np.inf, np.nan]), 1, 0.5, 1e-9) is None
