"""Application configuration using pydantic-settings."""

from functools import lru_cache
from pathlib import Path

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables (prefix ``MACKEYCALC_``)."""

    model_config = SettingsConfigDict(
        env_prefix="MACKEYCALC_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # -------------------------------------------------------------------------
    # Computation cache
    # -------------------------------------------------------------------------
    cache_dir: str = ".mackeycalc-cache"
    cache_enabled: bool = True
    cache_verify_fraction: float = 0.1  # Share of cached chart rows recomputed per run

    @property
    def cache_path(self) -> Path:
        """Cache directory as a Path."""
        return Path(self.cache_dir).expanduser()

    # -------------------------------------------------------------------------
    # Charts
    # -------------------------------------------------------------------------
    chart_workers: int = 1  # 1 = compute rows inline

    # -------------------------------------------------------------------------
    # Identification
    # -------------------------------------------------------------------------
    identify_max_trials: int = 400
    identify_seed: int = 20240917

    # -------------------------------------------------------------------------
    # Tambara quotients
    # -------------------------------------------------------------------------
    quotient_norm_samples: int = 3  # Extra lifts checked per residue class
    quotient_seed: int = 7

    # -------------------------------------------------------------------------
    # Logging
    # -------------------------------------------------------------------------
    log_level: str = "INFO"
    json_logs: bool = False


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


# Convenience alias
settings = get_settings()
