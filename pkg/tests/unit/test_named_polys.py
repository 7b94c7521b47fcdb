"""
Unit tests for the named polynomials and their Sturm certificates.
"""

import math
from fractions import Fraction

import pytest

from hmi.errors import CertificationFailure, DomainError
from hmi.services.named_polys import build_named_poly, certify_sign, critical_maximum
from hmi.services.poly import count_roots_in, isolate_roots


@pytest.fixture(scope="module")
def polys(stieltjes_table):
    return {
        pid: build_named_poly(pid, stieltjes_table)
        for pid in ("P", "P_PRINTED", "Q", "P1", "V", "QUARTIC")
    }


def test_values_at_one(polys, stieltjes_table):
    g = stieltjes_table.gamma
    p_at_1 = float(polys["P"].poly(1))
    q_at_1 = float(polys["Q"].poly(1))
    assert p_at_1 == pytest.approx(-(math.pi**6) * g[3], rel=1e-8)
    assert q_at_1 == pytest.approx(math.pi**16 * g[4], rel=1e-8)


def test_degrees(polys):
    assert polys["P"].poly.degree == 13
    assert polys["Q"].poly.degree == 13
    assert polys["P1"].poly.degree == 3
    assert polys["V"].poly.degree == 3
    assert polys["QUARTIC"].coeff_abs_err == 0


def test_error_bounds(polys):
    for pid in ("P", "Q", "P1", "V"):
        assert polys[pid].coeff_abs_err > 0, pid
    # gamma errors are at most 1e-10 and enter the cubics with small factors
    assert polys["P1"].coeff_abs_err < Fraction(1, 10**8)
    assert polys["V"].coeff_abs_err < Fraction(1, 10**8)


def test_certify_p_negative_on_unit_interval(polys):
    cert = certify_sign(polys["P"], 0, 1, -1)
    assert cert.root_count == 0
    assert cert.sign == -1
    assert cert.robust and cert.status == "robust"
    assert cert.method == "sturm"


def test_certify_q_positive(polys):
    cert = certify_sign(polys["Q"], 1, 2, 1)
    assert cert.robust
    assert cert.margin > cert.perturbation_bound


def test_certify_p1_to_infinity(polys):
    cert = certify_sign(polys["P1"], 2, None, -1)
    assert cert.method == "sturm+cauchy"
    assert cert.interval == ["2", None]
    assert int(cert.upper_used) >= 50
    assert cert.robust


def test_certify_v_and_its_derivative(polys):
    assert certify_sign(polys["V"], 1, 2, -1).robust
    dv = polys["V"].model_copy(update={"poly": polys["V"].poly.derivative()})
    assert certify_sign(dv, 1, 2, -1).robust
    assert count_roots_in(dv.poly, -100, 0) == 2


def test_wrong_sign_is_rejected(polys):
    with pytest.raises(CertificationFailure):
        certify_sign(polys["P"], 0, 1, 1)
    with pytest.raises(CertificationFailure):
        certify_sign(polys["P1"], 2, None, 1)


def test_printed_p_has_a_root(polys):
    assert count_roots_in(polys["P_PRINTED"].poly, 0, 1) >= 1
    with pytest.raises(CertificationFailure):
        certify_sign(polys["P_PRINTED"], 0, 1, -1)


def test_quartic_root(polys):
    brackets = isolate_roots(polys["QUARTIC"].poly, 0, 1, Fraction(1, 10**15))
    assert len(brackets) == 1
    lo, hi = brackets[0]
    assert float(lo) - 1e-15 <= math.sqrt(math.sqrt(5.0) - 2.0) <= float(hi) + 1e-15


def test_p1_critical_maximum(polys):
    crit = critical_maximum(polys["P1"], 2, 50)
    assert crit.x == pytest.approx(2.87, abs=1e-2)
    assert crit.value == pytest.approx(-0.535, abs=2e-3)


def test_unknown_poly_id(stieltjes_table):
    with pytest.raises(DomainError):
        build_named_poly("R", stieltjes_table)
