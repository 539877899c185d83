"""
Configuration settings for the ER load balancing engine.
"""
import os
from dataclasses import dataclass
from typing import Optional

from dotenv import load_dotenv

from core.errors import ConfigurationError

# Pick up a local .env when present (local development)
load_dotenv()

ENV_PREFIX = "ERLB_"

STRATEGY_NAMES = ("basic", "blocksplit", "pairrange")
MATCHER_NAMES = ("jaccard", "null")


def _env(name: str, default: str) -> str:
    return os.environ.get(ENV_PREFIX + name, default)


def env_is_set(name: str) -> bool:
    """Whether an ERLB_* variable was given (environment or loaded env file)."""
    return ENV_PREFIX + name in os.environ


def _env_int(name: str, default: int, minimum: int = 0) -> int:
    raw = _env(name, str(default))
    try:
        value = int(raw, 0)
    except ValueError:
        raise ConfigurationError(f"{ENV_PREFIX}{name} must be an integer, got {raw!r}")
    if value < minimum:
        raise ConfigurationError(f"{ENV_PREFIX}{name} must be >= {minimum}, got {value}")
    return value


def _env_float(name: str, default: float) -> float:
    raw = _env(name, str(default))
    try:
        return float(raw)
    except ValueError:
        raise ConfigurationError(f"{ENV_PREFIX}{name} must be a number, got {raw!r}")


@dataclass(frozen=True)
class Settings:
    """Runtime defaults; every field can be overridden by an ERLB_* variable."""

    map_partitions: int = 4
    reduce_tasks: int = 8
    workers: int = 4
    matcher: str = "jaccard"
    match_threshold: float = 0.8
    match_attribute: int = 0
    seed: int = 42
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls, env_file: Optional[str] = None) -> "Settings":
        """
        Build settings from the environment.

        Args:
            env_file: Optional .env file loaded (with override) before reading

        Returns:
            Settings instance
        """
        if env_file:
            if not os.path.exists(env_file):
                raise ConfigurationError(f"env file not found: {env_file}")
            load_dotenv(env_file, override=True)

        settings = cls(
            map_partitions=_env_int("MAP_PARTITIONS", cls.map_partitions, minimum=1),
            reduce_tasks=_env_int("REDUCE_TASKS", cls.reduce_tasks, minimum=1),
            workers=_env_int("WORKERS", cls.workers, minimum=1),
            matcher=_env("MATCHER", cls.matcher),
            match_threshold=_env_float("MATCH_THRESHOLD", cls.match_threshold),
            match_attribute=_env_int("MATCH_ATTRIBUTE", cls.match_attribute),
            seed=_env_int("SEED", cls.seed),
            log_level=_env("LOG_LEVEL", cls.log_level).upper(),
        )
        if settings.matcher not in MATCHER_NAMES:
            raise ConfigurationError(f"unknown matcher {settings.matcher!r}; expected one of {MATCHER_NAMES}")
        if not 0.0 <= settings.match_threshold <= 1.0:
            raise ConfigurationError(f"match threshold must lie in [0, 1], got {settings.match_threshold}")
        return settings


# Application settings
HASH_SEED = _env_int("HASH_SEED", 0x5EED)  # seed of the stable 64-bit partition hash, read once at import
HASH_DIGEST_BYTES = 8
DEFAULT_ATTR_LEN = 12  # generated payload length
MUTATION_RATE = 0.1  # per-character mutation probability of generated payloads
MAX_CONSOLE_ROWS = 20  # rows shown by console summaries
