"""
Application configuration using Pydantic settings.
"""

from functools import lru_cache

from pydantic import ConfigDict, Field
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = ConfigDict(
        env_file=".env",
        case_sensitive=False,
        extra="ignore",  # Ignore extra fields from .env file
    )

    # Application
    APP_NAME: str = Field(default="qwalk-geophase", description="Application name")
    APP_DESCRIPTION: str = Field(
        default="Quantum walks, topological invariants and geometric phases",
        description="Application description",
    )
    APP_ENVIRONMENT: str = Field(
        default="development", description="Application environment"
    )
    APP_VERSION: str = Field(default="0.1.0", description="Application version")
    LOG_LEVEL: str = Field(
        default="WARNING", description="Log level for stderr diagnostics"
    )

    # Orchestration
    QWGP_WORKERS: int = Field(
        default=1, ge=1, description="Default worker count for parameter sweeps"
    )
    OUTPUT_DIR: str = Field(default="results", description="Default output directory")
    CSV_DIGITS: int = Field(
        default=15, ge=12, le=17, description="Significant digits for CSV floats"
    )
    RANDOM_SEED: int = Field(default=20240611, description="Seed for sampled checks")

    # Numerical defaults
    EIG_RESIDUAL_TOL: float = Field(
        default=1e-10, description="Relative residual bound for converged eigenpairs"
    )
    ROOT_CLUSTER_TOL: float = Field(
        default=1e-6, description="Relative distance below which roots are merged"
    )
    QUAD_TOL: float = Field(default=1e-10, description="Quadrature tolerance")
    QUAD_LIMIT: int = Field(default=500, description="Quadrature subdivision cap")
    WINDING_KCOUNT: int = Field(default=2001, description="1D winding k-grid size")
    CHERN_GRID: int = Field(default=96, description="Chern k-grid size per axis")
    CURVE_SAMPLES: int = Field(default=2001, description="Samples per curve or cycle")


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
