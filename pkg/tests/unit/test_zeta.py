import math

import mpmath as mp
import numpy as np
import pytest

from hmi.errors import DomainError, OutOfDisc, PoleError, UnsupportedOrder
from hmi.schemas.kernels import LaurentConfig
from hmi.services.laurent import (
    laurent_regular,
    laurent_tail_bound,
    laurent_zeta,
    laurent_zeta_array,
)
from hmi.services.zeta import (
    cvz_weights,
    eta,
    eta_array,
    eta_family,
    zeta,
    zeta_array,
    zeta_eta_path,
    zeta_family,
    zeta_family_array,
    zeta_sandwich,
)


@pytest.mark.parametrize("s", ["0.5", "2", "3", "4"])
def test_zeta_spot_values(oracle_values, s):
    assert zeta(float(s)).value == pytest.approx(oracle_values["zeta"][s], abs=1e-13)


@pytest.mark.parametrize("s", ["0.5", "1", "2"])
def test_eta_spot_values(oracle_values, s):
    assert eta(float(s)).value == pytest.approx(oracle_values["eta"][s], abs=1e-14)


def test_zeta_derivative_spot_value(oracle_values):
    assert zeta(2.0, 1).value == pytest.approx(oracle_values["zeta1"]["2"], abs=1e-12)


def test_eta_zeta_identity():
    s = np.concatenate([np.linspace(0.05, 0.7, 200), np.linspace(1.3, 30.0, 200)])
    lhs = eta_array(s)
    rhs = (1.0 - 2.0 ** (1.0 - s)) * zeta_array(s)
    np.testing.assert_allclose(lhs, rhs, rtol=0, atol=1e-11)


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_zeta_derivatives_match_mpmath(k):
    for s in (0.1, 0.5, 0.9, 1.1, 1.5, 2.0, 7.0):
        expected = float(mp.zeta(s, derivative=k))
        got = zeta(s, k).value
        assert got == pytest.approx(expected, rel=1e-10, abs=1e-12), (s, k)


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_eta_derivatives_match_mpmath(k):
    for s in (0.05, 0.5, 1.0, 3.0, 12.0):
        expected = float(mp.diff(mp.altzeta, s, k))
        assert eta(s, k).value == pytest.approx(expected, rel=1e-11, abs=1e-13), (s, k)


def test_two_paths_agree_in_overlap():
    # 100 radii on each side of the pole; binary64 limits the agreement to
    # 1e-10 relative once |zeta^(k)| exceeds 1
    radii = np.linspace(0.05, 0.25, 100, endpoint=False)
    points = np.concatenate([1.0 - radii, 1.0 + radii])
    assert points.size == 200
    for s in points:
        for k in range(4):
            laurent = laurent_zeta(float(s), k).value
            quotient = zeta_eta_path(float(s), k).value
            assert abs(laurent - quotient) <= 1e-10 * max(1.0, abs(quotient)), (s, k)


def test_family_is_consistent():
    fam = zeta_family(0.3, 3)
    for k in range(4):
        assert fam[k].value == zeta(0.3, k).value
    eta_fam = eta_family(2.5, 3)
    assert eta_fam[2].value == eta(2.5, 2).value


def test_zeta_pole_and_domain():
    with pytest.raises(PoleError) as exc:
        zeta(1.0)
    assert exc.value.code == "pole"
    with pytest.raises(DomainError):
        zeta(-0.5)
    with pytest.raises(DomainError):
        eta(0.0)
    with pytest.raises(UnsupportedOrder):
        zeta(2.0, 4)


def test_zeta_sign_pattern_near_one():
    values, _ = zeta_family_array(np.asarray([0.99, 1.01]), 3)
    assert values[0][0] < 0 < values[0][1]
    assert values[1][0] < 0 and values[1][1] < 0


def test_cvz_weights_sum_alternating_series():
    w = cvz_weights(30)
    # sum (-1)^k/(k+1) = log 2
    terms = 1.0 / np.arange(1, 31)
    assert float(np.sum(w * terms)) == pytest.approx(math.log(2.0), abs=1e-14)


def test_row_results_independent_of_batch():
    s = np.linspace(0.2, 5.0, 64)
    whole = zeta_array(s, 1)
    parts = np.concatenate([zeta_array(chunk, 1) for chunk in np.array_split(s, 5)])
    assert np.array_equal(whole, parts)


# ----------------------------------------------------------------------
# Laurent expansion
# ----------------------------------------------------------------------


def test_laurent_regular_at_one_is_euler_gamma(stieltjes_table):
    assert laurent_regular(1.0).value == pytest.approx(stieltjes_table.gamma[0], abs=1e-15)
    # R'(1) = -gamma_1
    assert laurent_regular(1.0, 1).value == pytest.approx(-stieltjes_table.gamma[1], abs=1e-15)


def test_laurent_disc_checks():
    with pytest.raises(OutOfDisc):
        laurent_zeta(1.5)
    with pytest.raises(PoleError):
        laurent_zeta(1.0)


def test_laurent_tail_bound_shrinks_with_terms():
    assert laurent_tail_bound(0.25, 0, 12) < laurent_tail_bound(0.25, 0, 8)
    assert laurent_tail_bound(0.0, 2, 12) == 0.0
    assert laurent_tail_bound(0.25, 3, 12) < 1e-12


def test_laurent_error_estimate_covers_truth():
    cfg = LaurentConfig()
    s = np.asarray([0.8, 0.95, 1.05, 1.2])
    values, errors = laurent_zeta_array(s, 0, cfg)
    for v, e, si in zip(values, errors, s):
        assert abs(v - float(mp.zeta(si))) <= max(e, 1e-15) * 10


def test_config_rejects_loose_tail():
    with pytest.raises(ValueError):
        LaurentConfig(radius=0.9, terms=8)


# ----------------------------------------------------------------------
# Sandwich bounds on (0, 1)
# ----------------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 3])
def test_sandwich_brackets_derivatives(n):
    for x in np.linspace(0.01, 0.99, 500):
        lo, hi = zeta_sandwich(n, float(x))
        value = (-1) ** n * zeta(float(x), n).value
        assert lo <= value <= hi


def test_sandwich_order_zero_upper_fails_near_one():
    lo, hi = zeta_sandwich(0, 0.95)
    assert not (lo <= zeta(0.95).value <= hi)
    lo, hi = zeta_sandwich(0, 0.5)
    assert lo <= zeta(0.5).value <= hi


def test_sandwich_domain():
    with pytest.raises(DomainError):
        zeta_sandwich(1, 1.5)
    with pytest.raises(UnsupportedOrder):
        zeta_sandwich(5, 0.5)
