"""
Linkform - Configuration

Settings are read from the environment (the run script loads `.env` first).
"""

import os
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from .errors import ConfigurationError

DEFAULT_FACTOR_LIMIT = 2**128
DEFAULT_POLLARD_BUDGET = 2_000_000


class Settings(BaseModel):
    """Runtime settings."""

    model_config = ConfigDict(frozen=True)

    factor_limit: int = Field(default=DEFAULT_FACTOR_LIMIT, gt=1, description="Exclusive bound on |n| for factorization")
    pollard_budget: int = Field(default=DEFAULT_POLLARD_BUDGET, gt=0, description="Iterations per Pollard-Brent attempt")
    workers: int = Field(default=1, ge=1, description="Worker processes for census partitions")


def _parse_int(name: str, raw: str) -> int:
    text = raw.strip().replace("_", "")
    try:
        if "**" in text:
            base, exponent = text.split("**", 1)
            return int(base) ** int(exponent)
        if "^" in text:
            base, exponent = text.split("^", 1)
            return int(base) ** int(exponent)
        return int(text)
    except ValueError as e:
        raise ConfigurationError(f"{name}={raw!r} is not an integer") from e


def load_settings(environ: Optional[dict[str, str]] = None) -> Settings:
    """
    Build Settings from environment variables.

    Args:
        environ: Mapping to read from (defaults to os.environ)

    Returns:
        Frozen Settings instance

    Raises:
        ConfigurationError: if a variable is present but malformed
    """
    env = os.environ if environ is None else environ
    values: dict[str, int] = {}

    for key, field in (
        ("LINKFORM_FACTOR_LIMIT", "factor_limit"),
        ("LINKFORM_POLLARD_BUDGET", "pollard_budget"),
        ("LINKFORM_WORKERS", "workers"),
    ):
        raw = env.get(key)
        if raw:
            values[field] = _parse_int(key, raw)

    try:
        return Settings(**values)
    except ValueError as e:
        raise ConfigurationError(str(e)) from e
