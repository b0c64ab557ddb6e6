"""
FocalFront - Configuration

Environment-based configuration using Pydantic Settings.
"""

from functools import lru_cache
from typing import Literal

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="FOCALFRONT_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
    )

    # ==========================================================================
    # Application
    # ==========================================================================
    app_name: str = "FocalFront"
    app_version: str = "0.1.0"
    debug: bool = False
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "INFO"

    # ==========================================================================
    # API
    # ==========================================================================
    api_host: str = "0.0.0.0"
    api_port: int = 8000
    api_prefix: str = "/api/v1"

    # ==========================================================================
    # Jets
    # ==========================================================================
    jet_order: int = Field(default=6, ge=4, le=10)
    max_jet_order: int = 10

    # ==========================================================================
    # Tolerances
    # ==========================================================================
    eps_zero: float = Field(default=1e-9, gt=0)  # relative to the largest coefficient
    eps_div: float = Field(default=1e-9, gt=0)
    eps_export: float = Field(default=1e-6, gt=0)  # |kappa_hat| below this drops a focal vertex
    identity_tolerance: float = 1e-8

    # ==========================================================================
    # Singular curve tracing
    # ==========================================================================
    trace_step: float = 0.02
    trace_max_newton: int = 25
    trace_residual: float = 1e-10
    trace_max_jump: float = 0.25

    # ==========================================================================
    # Reports
    # ==========================================================================
    schema_version: str = "1.0"
    float_digits: int = 12

    @field_validator("max_jet_order")
    @classmethod
    def cap_max_order(cls, value: int) -> int:
        if not 4 <= value <= 10:
            raise ValueError("max_jet_order must lie in [4, 10]")
        return value


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
