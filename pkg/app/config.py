"""Application configuration management."""

from functools import lru_cache

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Application settings from environment variables."""

    # Logging
    log_level: str = "WARNING"
    log_format: str = "text"

    # Exploration budgets
    default_budget: int = 100000
    default_ray_length: int = 10
    default_max_word_len: int = 1
    default_window_radius: int = 10
    metric_budget: int = 100000
    brute_force_cap: int = 2000000

    # Concurrency
    workers: int = 1

    # Self-test
    selftest_ray_count: int = 100
    selftest_max_length: int = 100
    selftest_dichotomy_budget: int = 1000000

    class Config:
        """Pydantic configuration."""

        env_file = ".env"
        case_sensitive = False


@lru_cache()
def get_settings() -> Settings:
    """Get application settings (cached)."""
    return Settings()
