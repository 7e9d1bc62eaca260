"""
Configuration module for the dioperad engine.
Loads and validates environment variables from .env files.
"""

from functools import lru_cache
from typing import Optional
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

# Hard caps enforced on every job; not configurable
HARD_MAX_ARITY = 7
HARD_MAX_ORDER = 6
HARD_MAX_VERTICES = 6


class Settings(BaseSettings):
    """Engine settings loaded from environment variables."""

    # Application settings
    environment: str = "development"
    engine_version: str = "1.0.0"

    # Arity window defaults
    max_arity: int = 6
    max_vertices: int = 5

    # Formal geometry
    default_order: int = 4

    # Parallelism (the only knob the CLI reads from the environment)
    threads: int = Field(default=1, validation_alias="DIOPERAD_THREADS")

    # Property suites
    random_seed: int = 20240101

    # Logging
    log_level: str = "INFO"
    log_file: Optional[str] = None

    # Reports
    report_format: str = "text"

    # Shipped presentation catalogue (defaults to data/presentations in the repo)
    presentations_dir: Optional[str] = None

    model_config = SettingsConfigDict(
        env_file=".env", env_file_encoding="utf-8", case_sensitive=False, extra="ignore"
    )

    @property
    def is_production(self) -> bool:
        """Check if running in production environment."""
        return self.environment.lower() == "production"

    @property
    def worker_count(self) -> int:
        """Thread count clamped to at least one worker."""
        return max(1, self.threads)


@lru_cache()
def get_settings() -> Settings:
    """
    Get cached settings instance.
    Uses lru_cache to ensure settings are loaded only once.
    """
    return Settings()


# Export settings instance
settings = get_settings()
