"""
Runtime settings, read from the environment (and a local .env file).
"""

import logging
import os
from functools import lru_cache

from dotenv import load_dotenv
from pydantic import BaseModel, Field

logger = logging.getLogger(__name__)

# Vertex sets are single machine-word bitmasks.
WIDTH_CAP = 64


class Settings(BaseModel):
    """Tunable limits and defaults."""

    log_level: str = Field("WARNING", description="Root log level for the CLI")
    aut_cap: int = Field(12, ge=1, le=WIDTH_CAP, description="Max vertices (or classes) for automorphism enumeration")
    max_group_order: int = Field(40320, ge=1, description="Max automorphism group order enumerated explicitly")
    scan_limit: int = Field(12, ge=0, le=24, description="Max n for literal scans over all 2^n subsets")
    random_seed: int = Field(0, description="Seed for randomised check suites")
    random_trials: int = Field(200, ge=0, description="Random instances per randomised check suite")
    exhaustive_limit: int = Field(
        4, ge=0, le=6, description="Max n at which exhaustive runs enumerate every subset tuple instead of sampling"
    )


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Load settings once per process."""
    load_dotenv()
    settings = Settings(
        log_level=os.getenv("ORTHOLAT_LOG_LEVEL", "WARNING").upper(),
        aut_cap=int(os.getenv("ORTHOLAT_AUT_CAP", "12")),
        max_group_order=int(os.getenv("ORTHOLAT_MAX_GROUP_ORDER", "40320")),
        scan_limit=int(os.getenv("ORTHOLAT_SCAN_LIMIT", "12")),
        random_seed=int(os.getenv("ORTHOLAT_RANDOM_SEED", "0")),
        random_trials=int(os.getenv("ORTHOLAT_RANDOM_TRIALS", "200")),
        exhaustive_limit=int(os.getenv("ORTHOLAT_EXHAUSTIVE_LIMIT", "4")),
    )
    logger.debug(f"Loaded settings: {settings}")
    return settings
