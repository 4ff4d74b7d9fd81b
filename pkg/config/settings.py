"""Application settings using Pydantic Settings."""

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application configuration loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Database (oracle profile cache)
    database_url: str = "sqlite:///./covering_nichols.db"

    # Groups
    group_size_bound: int = 512
    axiom_check_bound: int = 64

    # Root systems and Cartan matrices
    cartan_bound: int = 8
    root_system_max_rank: int = 16
    exceptional_max_rank: int = 8
    root_closure_limit: int = 20000

    # Oracle
    oracle_dense_bound: int = 4096
    oracle_sparse_bound: int = 32768
    oracle_exact_bound: int = 1024
    oracle_primes: int = Field(default=2, ge=2)
    oracle_threads: int = Field(default=1, ge=1)

    # Logging
    log_level: str = "INFO"

    @property
    def prime_ceiling(self) -> int:
        """Primes for modular rank are taken below this value."""
        return 2**31


settings = Settings()
