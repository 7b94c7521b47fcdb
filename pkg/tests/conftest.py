"""
Pytest configuration and shared fixtures for the hmi test suite.
"""

import json
import os
import tempfile
from pathlib import Path

import pytest

# Set test environment before importing the package
os.environ["HMI_LOG_LEVEL"] = "WARNING"
os.environ["HMI_WORKERS"] = "1"
os.environ.pop("HMI_CONFIG_FILE", None)
# One shared Stieltjes cache per machine keeps repeated runs fast
if "HMI_STIELTJES_CACHE_PATH" not in os.environ:
    os.environ["HMI_STIELTJES_CACHE_PATH"] = str(
        Path(tempfile.gettempdir()) / "hmi-test-stieltjes.txt"
    )

from hmi.config import get_settings  # noqa: E402
from hmi.services.stieltjes import stieltjes_table as load_table  # noqa: E402
from hmi.services.verifier.catalog import ExpressionCatalog  # noqa: E402
from hmi.services.verifier.checks import ClaimVerifier  # noqa: E402

get_settings.cache_clear()

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def settings():
    return get_settings()


@pytest.fixture(scope="session")
def stieltjes_table():
    """The process-wide table, built once per session."""
    return load_table()


@pytest.fixture(scope="session")
def oracle_values():
    return json.loads((FIXTURES / "oracle_values.json").read_text())


@pytest.fixture(scope="session")
def catalog(stieltjes_table):
    return ExpressionCatalog(table=stieltjes_table)


@pytest.fixture
def verifier(catalog, settings):
    return ClaimVerifier(catalog=catalog, settings=settings, workers=1)


@pytest.fixture
def cache_path(tmp_path):
    return tmp_path / "stieltjes.txt"
