"""
Shared fixtures.
"""

import pytest
import structlog

from splitlab.config import Settings, use_settings


@pytest.fixture(autouse=True)
def default_settings():
    """Run every test with default settings and unconfigured logging."""
    use_settings(Settings())
    yield
    use_settings(Settings())
    structlog.reset_defaults()
