"""Configuration loader."""

import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from pydantic import BaseModel, Field, ValidationError

logger = logging.getLogger(__name__)

MAX_Q_ENV = "HERMITIAN_MAX_Q"


class Limits(BaseModel):
    max_field_order: int = Field(2**24, gt=1)
    max_enum_q: int = Field(16, gt=1)
    max_weight4_supports: int = Field(2_000_000, gt=0)
    max_codewords: int = Field(2**20, gt=0)
    max_support_checks: int = Field(5_000_000, gt=0)


class RunSettings(BaseModel):
    workers: int = Field(1, ge=1)
    orbit_samples: int = Field(64, ge=1)
    seed: int = 0


class LoggingSettings(BaseModel):
    level: str = "INFO"


class DatabaseSettings(BaseModel):
    path: Optional[str] = None


class Settings(BaseModel):
    """Validated view of config.yaml."""

    limits: Limits = Limits()
    run: RunSettings = RunSettings()
    logging: LoggingSettings = LoggingSettings()
    database: DatabaseSettings = DatabaseSettings()


def load_config(path: str | Path = "config.yaml") -> Dict[str, Any]:
    """Load YAML config file.

    Args:
        path: Path to YAML config.

    Returns:
        Configuration dictionary.
    """
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(f"Config file not found: {p}")
    with p.open("r", encoding="utf-8") as fh:
        return yaml.safe_load(fh) or {}


def load_settings(path: str | Path | None = None) -> Settings:
    """Load and validate settings, falling back to defaults when the file is absent.

    The HERMITIAN_MAX_Q environment variable overrides ``limits.max_enum_q``.
    """
    raw: Dict[str, Any] = {}
    if path is not None:
        try:
            raw = load_config(path)
        except FileNotFoundError:
            logger.warning("Could not load config from %s, using defaults", path)
    settings = Settings.model_validate(raw)

    env_q = os.environ.get(MAX_Q_ENV)
    if env_q:
        try:
            limits = Limits.model_validate({**settings.limits.model_dump(), "max_enum_q": env_q})
        except ValidationError:
            logger.warning("Ignoring invalid %s=%r", MAX_Q_ENV, env_q)
        else:
            settings = settings.model_copy(update={"limits": limits})
    return settings
