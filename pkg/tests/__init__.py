"""Empty conftest for pytest configuration."""
