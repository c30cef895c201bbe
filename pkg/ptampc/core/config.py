"""
Configuration management for the risk-averse PTA-MPC toolkit

Uses pydantic-settings for type-safe configuration with environment variables.
Every field can be overridden with a PTAMPC_-prefixed variable or a .env file.
"""

import logging
import math
import os
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import List, Optional

from pydantic import Field, validator
from pydantic_settings import BaseSettings

# Bundled fixtures shipped with the package
BUNDLED_FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"


class Settings(BaseSettings):
    """
    Toolkit settings with environment variable support

    All settings can be overridden via environment variables, e.g.
    PTAMPC_FIXTURE_PATH=/srv/layouts:/srv/scenarios or PTAMPC_DEFAULT_BETA=1/2.
    """

    # Application
    app_name: str = "ptampc"
    app_version: str = "1.0.0"

    # Logging
    log_level: str = Field(default="INFO", description="Logging level")
    log_format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    # Fixture lookup
    fixture_path: str = Field(
        default="",
        description="Directories searched for fixture and scenario documents (os.pathsep or comma separated)",
    )

    # Planning
    default_beta: str = Field(default="1", description="Risk significance factor used when none is given")
    max_hops: Optional[int] = Field(
        default=None, ge=0, description="Hop bound of a whole route (None = state count)"
    )

    # Committed sub-path convention used by the PCM
    pcm_length_unit: str = Field(default="edges", description="Length unit: edges or states")
    pcm_terminal_closes: bool = Field(default=False, description="Whether the path's last state closes a CSP")
    pcm_allow_adjacent: bool = Field(default=False, description="Whether adjacent branch states form a length-1 CSP")

    # Simulation
    max_workers: int = Field(default=1, ge=1, description="Threads used to run controllers of one scenario")
    step_bound_factor: int = Field(default=2, ge=1, description="Run aborts after factor * |states| ticks")

    # Output
    significant_digits: int = Field(default=6, ge=1, le=17)

    class Config:
        env_prefix = "PTAMPC_"
        env_file = ".env"
        env_file_encoding = "utf-8"
        case_sensitive = False
        extra = "ignore"

    @validator("log_level")
    def validate_log_level(cls, v):
        """Ensure the level is one the logging module knows"""
        level = v.upper()
        if not isinstance(logging.getLevelName(level), int):
            raise ValueError(f"Unknown log level: {v}")
        return level

    @validator("default_beta")
    def validate_default_beta(cls, v):
        """Beta must be a finite, non-negative rational"""
        try:
            value = float(Fraction(v))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"default_beta is not a rational number: {v}") from exc
        if not math.isfinite(value) or value < 0:
            raise ValueError("default_beta must be finite and non-negative")
        return v

    @validator("pcm_length_unit")
    def validate_length_unit(cls, v):
        """Validate length unit value"""
        allowed = ["edges", "states"]
        if v not in allowed:
            raise ValueError(f"pcm_length_unit must be one of: {', '.join(allowed)}")
        return v

    def search_dirs(self) -> List[Path]:
        """Fixture search directories, bundled fixtures last"""
        parts = self.fixture_path.replace(",", os.pathsep).split(os.pathsep)
        return [Path(part.strip()) for part in parts if part.strip()] + [BUNDLED_FIXTURE_DIR]

    def beta(self) -> Fraction:
        """Default beta as an exact rational"""
        return Fraction(self.default_beta)


@lru_cache()
def get_settings() -> Settings:
    """
    Get cached settings instance

    Using lru_cache ensures we only create one Settings instance
    and parse environment variables once.
    """
    return Settings()
