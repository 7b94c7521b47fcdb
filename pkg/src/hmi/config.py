"""Configuration settings for the harmonic-mean inequality verifier."""

import os
from functools import lru_cache
from pathlib import Path
from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

CONFIG_FILE_ENV = "HMI_CONFIG_FILE"


class Settings(BaseSettings):
    """Settings loaded from environment variables and an optional key=value file."""

    model_config = SettingsConfigDict(
        env_prefix="HMI_",
        case_sensitive=False,
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Grids
    grid_n: int = Field(default=2000, ge=3)
    endpoint_eps: float = 1e-4
    refine_depth: int = 6
    margin_floor: float = 1e-9

    # Laurent expansion around s=1
    laurent_radius: float = 0.25
    laurent_terms: int = 12
    pole_guard: float = 1e-8

    # Stieltjes constants
    stieltjes_max_index: int = 16
    stieltjes_dps: int = 50
    stieltjes_levels: list[int] = [1000, 3000, 10000]
    stieltjes_cache_path: Optional[Path] = None

    # Sturm certificates
    sturm_eps: str = "1e-9"  # exact rational endpoint perturbation
    sturm_upper: int = 50

    # Execution
    workers: int = 1
    log_level: str = "WARNING"


def load_settings(config_file: Optional[Path] = None, **overrides: object) -> Settings:
    """Build an uncached Settings instance.

    The key=value file is read with the same dotenv parser the default
    ``.env`` goes through; environment variables still take precedence.
    Non-None keyword overrides (CLI flags) win over both.
    """
    if config_file is None and os.environ.get(CONFIG_FILE_ENV):
        config_file = Path(os.environ[CONFIG_FILE_ENV])
    if config_file is not None:
        settings = Settings(_env_file=config_file)  # type: ignore[call-arg]
    else:
        settings = Settings()
    updates = {k: v for k, v in overrides.items() if v is not None}
    if updates:
        settings = settings.model_copy(update=updates)
    return settings


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return load_settings()
