import os
import logging
from typing import Optional

from dotenv import load_dotenv

from ballot.errors import BudgetExceeded

load_dotenv()

LOG_FORMAT = "%(asctime)s | %(levelname)s | %(message)s"


class Config:
    # Flask
    SECRET_KEY = os.environ.get("SECRET_KEY", "dev-secret")
    CORS_ORIGINS = os.environ.get("CORS_ORIGINS", "*")

    # Enumeration oracle: refuse instances with more sequences than this
    ENUMERATION_BUDGET = int(os.environ.get("BALLOT_ENUMERATION_BUDGET", 10_000_000))

    # Default worker count for exact counts, scans and sampling
    WORKERS = int(os.environ.get("BALLOT_WORKERS", 1))

    # Sampler
    SAMPLE_BATCH = int(os.environ.get("BALLOT_SAMPLE_BATCH", 4096))
    # Upper bound on votes held per batch, so long sequences get fewer rows
    SAMPLE_ELEMENTS = int(os.environ.get("BALLOT_SAMPLE_ELEMENTS", 4_000_000))
    DEFAULT_SEED = int(os.environ.get("BALLOT_DEFAULT_SEED", 0))

    # Display-only decimal rendering of exact rationals
    DECIMAL_PLACES = int(os.environ.get("BALLOT_DECIMAL_PLACES", 12))

    LOG_LEVEL = os.environ.get("BALLOT_LOG_LEVEL", "INFO")


def enumeration_budget() -> int:
    """Budget read at call time, so an environment override after import wins."""
    value = os.environ.get("BALLOT_ENUMERATION_BUDGET")
    return int(value) if value else Config.ENUMERATION_BUDGET


def check_budget(size: int, budget: Optional[int] = None):
    budget = enumeration_budget() if budget is None else budget
    if size > budget:
        raise BudgetExceeded(size, budget)


def default_workers() -> int:
    value = os.environ.get("BALLOT_WORKERS")
    return max(1, int(value) if value else Config.WORKERS)


def configure_logging(level=None):
    logging.basicConfig(
        level=level or Config.LOG_LEVEL,
        format=LOG_FORMAT,
    )
