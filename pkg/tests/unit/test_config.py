"""
Unit tests for settings loading and the error hierarchy.
"""

import pytest
from pydantic import ValidationError

from hmi.config import CONFIG_FILE_ENV, Settings, get_settings, load_settings
from hmi.errors import (
    DomainError,
    HarmonicMeanPole,
    HmiError,
    PoleError,
    UnknownClaim,
)


def test_defaults():
    """Test the built-in grid and certificate defaults."""
    settings = Settings(_env_file=None)
    assert settings.grid_n == 2000
    assert settings.endpoint_eps == 1e-4
    assert settings.margin_floor == 1e-9
    assert settings.sturm_eps == "1e-9"
    assert settings.laurent_radius == 0.25
    # limit claims take their approach sequence from the claim itself
    assert "limit_eps" not in Settings.model_fields


def test_grid_needs_three_points(tmp_path):
    """Test that grids too small to scan are rejected at load time."""
    with pytest.raises(ValidationError):
        Settings(_env_file=None, grid_n=2)
    path = tmp_path / "hmi.conf"
    path.write_text("HMI_GRID_N=1\n")
    with pytest.raises(ValidationError):
        load_settings(path)


def test_config_file_is_read(tmp_path):
    """Test that key=value files go through the dotenv reader."""
    path = tmp_path / "hmi.conf"
    path.write_text("HMI_GRID_N=321\nHMI_MARGIN_FLOOR=1e-7\n# comment\n")
    settings = load_settings(path)
    assert settings.grid_n == 321
    assert settings.margin_floor == 1e-7


def test_environment_beats_file(tmp_path, monkeypatch):
    """Test that environment variables override the config file."""
    path = tmp_path / "hmi.conf"
    path.write_text("HMI_GRID_N=321\n")
    monkeypatch.setenv("HMI_GRID_N", "77")
    assert load_settings(path).grid_n == 77


def test_overrides_beat_everything(tmp_path, monkeypatch):
    """Test that non-None keyword overrides win and None ones are ignored."""
    path = tmp_path / "hmi.conf"
    path.write_text("HMI_WORKERS=3\n")
    monkeypatch.setenv("HMI_GRID_N", "77")
    settings = load_settings(path, workers=5, grid_n=None)
    assert settings.workers == 5
    assert settings.grid_n == 77


def test_config_file_from_environment(tmp_path, monkeypatch):
    """Test that HMI_CONFIG_FILE names the file when no path is passed."""
    path = tmp_path / "hmi.conf"
    path.write_text("HMI_REFINE_DEPTH=2\n")
    monkeypatch.setenv(CONFIG_FILE_ENV, str(path))
    assert load_settings().refine_depth == 2


def test_get_settings_is_cached():
    """Test that get_settings returns one shared instance."""
    assert get_settings() is get_settings()


# ----------------------------------------------------------------------
# Errors
# ----------------------------------------------------------------------


def test_error_hierarchy():
    """Test that kernel errors are ValueErrors with stable codes."""
    assert issubclass(HmiError, ValueError)
    assert issubclass(PoleError, DomainError)
    assert issubclass(HarmonicMeanPole, DomainError)
    with pytest.raises(ValueError):
        raise PoleError("zeta has a pole at s=1", {"s": 1.0})


def test_error_response():
    """Test the structured error payload."""
    exc = PoleError("zeta has a pole at s=1", {"s": 1.0})
    response = exc.to_response()
    assert response.error == {
        "code": "pole",
        "message": "zeta has a pole at s=1",
        "details": {"s": 1.0},
    }


def test_unknown_claim_lists_ids():
    """Test that unknown ids are reported sorted and deduplicated."""
    exc = UnknownClaim(["Z99", "A1", "Z99"])
    assert exc.code == "unknown_claim"
    assert exc.details == {"unknown": ["A1", "Z99"]}
    assert "A1, Z99" in exc.message
