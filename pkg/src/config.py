"""Runtime settings for wordca.

Values come from (highest priority first) CLI flags, WORDCA_* environment
variables, a local .env file, and the defaults below.
"""

from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Analysis defaults shared by the CLI and the theorem harness."""

    model_config = SettingsConfigDict(
        env_prefix="WORDCA_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    prefix_length: int = Field(default=100_000, ge=1, description="Default prefix length N")
    n_max: int = Field(default=100, ge=1, description="Default largest factor length")
    analysis_ratio: int = Field(
        default=100, ge=1, description="Required prefix_length / n_max ratio (analyzer guard)"
    )
    coverage_horizon: int = Field(
        default=50, ge=1, description="Windows per residue class for modulo-recurrence"
    )
    richness_prefix: int = Field(
        default=2000, ge=1, description="Prefix length scanned by the richness check"
    )
    random_seed: int = Field(default=20240601, description="Seed for random rule tables")
    random_rule_count: int = Field(default=20, ge=1, description="Random rules in transfer law")
    jobs: int = Field(default=1, ge=1, description="Worker threads for independent checks")
    log_level: str = Field(default="INFO", description="Logging level for the CLI")


@lru_cache
def get_settings() -> Settings:
    """Return the process-wide settings instance."""
    return Settings()
