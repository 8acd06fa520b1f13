"""
Runtime settings loaded from YAML.
"""

from pathlib import Path

import yaml
from pydantic import BaseModel, Field

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parent.parent / "config" / "default.yaml"


class CorpusSettings(BaseModel):
    """
    Bounds for the generated test corpora.

    Attributes:
        max_edges: Largest edge count of enumerated multigraphs
        max_vertices: Largest vertex count of enumerated multigraphs
        allow_loops: Whether enumerated multigraphs may carry loop edges
        random_matroids: Number of random matroids in the splitting suite
        random_max_rows: Row bound for random representations
        random_max_cols: Column bound for random representations
        lemma_hosts: Number of planted tilde-minor hosts
    """

    max_edges: int = Field(default=8, ge=0)
    max_vertices: int = Field(default=5, ge=1)
    allow_loops: bool = False
    random_matroids: int = Field(default=500, ge=0)
    random_max_rows: int = Field(default=4, ge=1)
    random_max_cols: int = Field(default=8, ge=1)
    lemma_hosts: int = Field(default=50, ge=0)


class Settings(BaseModel):
    """Search bounds, seed and logging for a run."""

    enumeration_bound: int = Field(default=14, ge=1)
    realization_bound: int = Field(default=9, ge=0)
    oracle_bound: int = Field(default=12, ge=0)
    seed: int = Field(default=20240101, ge=0)
    log_level: str = "WARNING"
    corpus: CorpusSettings = Field(default_factory=CorpusSettings)


_active = Settings()


def load_settings(path: Path | None = None) -> Settings:
    """
    Load settings from a YAML file.

    Args:
        path: Config file (defaults to config/default.yaml when it exists)

    Returns:
        Validated settings; missing keys take their defaults
    """
    path = path or DEFAULT_CONFIG_PATH
    if not path.exists():
        return Settings()
    with open(path) as f:
        data = yaml.safe_load(f) or {}
    return Settings.model_validate(data)


def get_settings() -> Settings:
    """Return the active settings."""
    return _active


def use_settings(settings: Settings) -> None:
    """Make `settings` the active settings for subsequent library calls."""
    global _active
    _active = settings
