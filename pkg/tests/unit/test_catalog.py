"""
Unit tests for the expression catalog.
"""

import math

import numpy as np
import pytest

from hmi.errors import DomainError, HarmonicMeanPole
from hmi.services.verifier.catalog import expression_names, get_entry
from hmi.services.zeta import eta, zeta

LOG2 = math.log(2.0)


def test_every_entry_has_a_formula():
    names = expression_names()
    assert names == sorted(names)
    for name in ("PSI", "ZETA3", "THETA", "SIGMA", "G_ZETA", "VARPHI_RATIO", "P1_CRITICAL_MAX"):
        assert name in names
        assert get_entry(name).formula


@pytest.mark.parametrize("name", ["THETA", "SIGMA", "U_PROD", "PSI_SUM"])
def test_reciprocal_symmetry(catalog, name):
    """Test expressions that are invariant under x -> 1/x."""
    x = np.concatenate([np.geomspace(0.05, 0.9, 100), np.geomspace(1.1, 20.0, 100)])
    direct = catalog.evaluate(name, x)
    mirrored = catalog.evaluate(name, 1.0 / x)
    np.testing.assert_allclose(direct, mirrored, rtol=1e-10, atol=1e-10)


def test_g_zeta_is_odd_under_reciprocal(catalog):
    x = np.concatenate([np.geomspace(0.2, 0.95, 100), np.geomspace(1.05, 5.0, 100)])
    total = catalog.evaluate("G_ZETA", x) + catalog.evaluate("G_ZETA", 1.0 / x)
    assert np.max(np.abs(total)) < 1e-10
    assert catalog.aux_eval("G_ZETA", 1.0) == pytest.approx(0.0, abs=1e-14)


def test_removable_singularities_at_one(catalog, stieltjes_table):
    gamma = stieltjes_table.gamma[0]
    assert catalog.aux_eval("PHI_SUM", 1.0) == pytest.approx(2 * gamma - 1, abs=1e-13)
    assert catalog.aux_eval("RECIP_ZETA", 1.0) == 0.0
    near = catalog.aux_eval("PHI_SUM", 1.0 + 1e-9)
    assert near == pytest.approx(2 * gamma - 1, abs=1e-8)


def test_varphi_values_at_one(catalog):
    assert catalog.aux_eval("VARPHI_RATIO", 1.0) == pytest.approx(-math.log(LOG2), abs=1e-15)
    assert catalog.aux_eval("VARPHI_RATIO_D1", 1.0) == pytest.approx(LOG2 / 2, abs=1e-10)
    assert catalog.aux_eval("VARPHI_RATIO_D2", 1.0) == pytest.approx(-(LOG2**2) / 12, abs=1e-7)


def test_varphi_continuous_through_one(catalog):
    left = catalog.aux_eval("VARPHI_RATIO", 1.0 - 1e-8)
    right = catalog.aux_eval("VARPHI_RATIO", 1.0 + 1e-8)
    assert left < -math.log(LOG2) < right
    assert right - left == pytest.approx(LOG2 * 1e-8, rel=1e-4)


def test_reflection_product_matches_kernels(catalog):
    got = catalog.aux_eval("ZETA_REFL_PROD", 0.3)
    assert got == pytest.approx(zeta(0.3).value * zeta(0.7).value, rel=1e-12)


def test_eta_reflection_mean_at_half(catalog):
    expected = (1.0 - math.sqrt(2.0)) * zeta(0.5).value
    assert catalog.aux_eval("HM_ETA_REFL", 0.5) == pytest.approx(expected, rel=1e-12)
    assert catalog.aux_eval("HM_ETA_REFL", 0.5) == pytest.approx(eta(0.5).value, rel=1e-13)


def test_missing_parameter(catalog):
    with pytest.raises(DomainError) as exc:
        catalog.evaluate("SIGNED_ZETA", [0.5])
    assert exc.value.details["missing"] == ["n"]
    value = catalog.aux_eval("SIGNED_ZETA", 0.5, {"n": 1})
    assert value == pytest.approx(-zeta(0.5, 1).value, rel=1e-14)


def test_unknown_expression(catalog):
    with pytest.raises(DomainError) as exc:
        catalog.evaluate("NOPE", [1.0])
    assert exc.value.details == {"expression": "NOPE"}


def test_kernel_errors_name_the_expression(catalog):
    with pytest.raises(DomainError) as exc:
        catalog.evaluate("PSI", [-1.0])
    assert exc.value.details["expression"] == "PSI"
    assert exc.value.message.startswith("PSI: ")


def test_harmonic_mean_pole(catalog):
    # 1/zeta vanishes at 1 on both sides of the mean
    with pytest.raises(HarmonicMeanPole):
        catalog.aux_eval("HM_ZETA_INV", 1.0)


def test_non_finite_value_is_domain_error(catalog):
    with pytest.raises(DomainError) as exc:
        catalog.aux_eval("PSI_OVER_LOG", 1.0)
    assert not isinstance(exc.value, HarmonicMeanPole)


def test_evaluate_keeps_shape(catalog):
    out = catalog.evaluate("PSI", 2.0)
    assert out.shape == (1,)
    out = catalog.evaluate("NEG_GAMMA", np.linspace(1.0, 2.0, 7))
    assert out.shape == (7,)
    assert np.all(out == -catalog.g[0])
