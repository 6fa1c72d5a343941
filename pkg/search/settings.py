"""
Runtime settings for campaigns and the CLI.

Values come from the environment after an env file has been loaded.
Priority: --env flag > .env.local > .env
"""

import logging
import os
from pathlib import Path

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator

from lattice_core.exceptions import InvalidConfigError

logger = logging.getLogger(__name__)

ENV_PREFIX = "POSCOMM_"


class Settings(BaseModel):
    """Process-wide knobs; campaign parameters live in SamplerConfig."""

    log_level: str = "INFO"
    corpus_path: Path = Path("__dev__/corpus.jsonl")
    max_attempts: int = Field(default=1_000_000, ge=1)
    workers: int = Field(default=1, ge=1)

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        level = v.upper()
        if level not in logging.getLevelNamesMapping():
            raise ValueError(f"Unknown log level: {v}")
        return level

    @classmethod
    def from_env(cls) -> "Settings":
        raw = {
            name: os.environ[ENV_PREFIX + name.upper()]
            for name in cls.model_fields
            if ENV_PREFIX + name.upper() in os.environ
        }
        try:
            return cls.model_validate(raw)
        except ValidationError as e:
            raise InvalidConfigError(f"Invalid {ENV_PREFIX}* environment: {e}") from e


def load_env_files(root: Path, env_file: str | None = None) -> Path | None:
    """Load the first env file found; returns its path, or None."""
    if env_file:
        env_path = root / env_file
        if not env_path.exists():
            raise InvalidConfigError(f"Environment file not found: {env_file}", {"path": str(env_path)})
        load_dotenv(env_path, override=True)
        return env_path

    for env_path in (root / ".env.local", root / ".env"):
        if env_path.exists():
            load_dotenv(env_path, override=True)
            logger.debug("Loaded environment from %s", env_path)
            return env_path
    return None
