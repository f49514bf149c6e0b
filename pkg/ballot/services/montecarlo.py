"""
Sampling estimates of P and P* for instances beyond the enumeration budget.

Random streams: numpy's PCG64 generator. The master seed feeds a
``numpy.random.SeedSequence`` whose ``spawn(workers)`` children seed one
generator per worker; worker i draws the i-th share of the n samples
(n // workers, plus one for the first n % workers workers). Each batch holds
at most Config.SAMPLE_ELEMENTS votes. The estimate is a function of
(spec, n, seed, workers) for fixed batch settings.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ballot.config import Config, default_workers
from ballot.errors import PreconditionViolation
from ballot.services.core import BallotSpec, scaled_steps

logger = logging.getLogger("MonteCarloService")

INT64_SAFE = 2 ** 62


@dataclass(frozen=True)
class SampleEstimate:
    p_hat: float
    p_star_hat: float
    n: int
    desirable_hits: int
    cute_hits: int
    std_err_p: float
    std_err_p_star: float
    seed: int
    workers: int = 1

    def to_dict(self):
        return {
            "p_hat": self.p_hat,
            "p_star_hat": self.p_star_hat,
            "n": self.n,
            "desirable_hits": self.desirable_hits,
            "cute_hits": self.cute_hits,
            "std_err_p": self.std_err_p,
            "std_err_p_star": self.std_err_p_star,
            "seed": self.seed,
            "workers": self.workers,
        }


def _binomial_std_err(hits: int, n: int) -> float:
    p = hits / n
    return math.sqrt(p * (1 - p) / n)


def _worker_shares(n: int, workers: int):
    base, extra = divmod(n, workers)
    return [base + (1 if i < extra else 0) for i in range(workers)]


def batch_rows(length: int, batch: int, elements: int) -> int:
    """Rows per batch: at most `batch`, and at most `elements` votes in total (never below one row)."""
    return max(1, min(batch, elements // length))


def _sample_share(spec: BallotSpec, share: int, seed_seq: np.random.SeedSequence, batch: int) -> Tuple[int, int]:
    """Desirable and cute hits among `share` uniformly shuffled sequences."""
    rng = np.random.default_rng(seed_seq)
    up, down = scaled_steps(spec.mu)
    # Exact integer walk q*S_r; fall back to Python ints when int64 could overflow.
    dtype = np.int64 if max(up, down) * spec.length < INT64_SAFE else object
    steps = np.array([up] * spec.a + [-down] * spec.b, dtype=dtype)

    rows = batch_rows(spec.length, batch, Config.SAMPLE_ELEMENTS)
    desirable = cute = 0
    remaining = share
    while remaining > 0:
        size = min(rows, remaining)
        shuffled = rng.permuted(np.tile(steps, (size, 1)), axis=1)
        lowest = np.cumsum(shuffled, axis=1).min(axis=1)
        desirable += int(np.count_nonzero(lowest > 0))
        cute += int(np.count_nonzero(lowest >= 0))
        remaining -= size
    return desirable, cute


def sample_probability(
    spec: BallotSpec,
    n: int,
    seed: int,
    workers: Optional[int] = None,
    batch: Optional[int] = None,
) -> SampleEstimate:
    if n < 1:
        raise PreconditionViolation(f"sample count must be positive, got {n}")
    if seed < 0:
        raise PreconditionViolation(f"seed must be nonnegative, got {seed}")
    workers = default_workers() if workers is None else max(1, workers)
    batch = Config.SAMPLE_BATCH if batch is None else max(1, batch)
    logger.info(f"Sampling {n} sequences for {spec} (seed={seed}, workers={workers})")

    children = np.random.SeedSequence(seed).spawn(workers)
    shares = _worker_shares(n, workers)

    if workers == 1:
        results = [_sample_share(spec, shares[0], children[0], batch)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(
                pool.map(lambda job: _sample_share(spec, job[0], job[1], batch), zip(shares, children))
            )

    desirable = sum(d for d, _ in results)
    cute = sum(c for _, c in results)
    return SampleEstimate(
        p_hat=desirable / n,
        p_star_hat=cute / n,
        n=n,
        desirable_hits=desirable,
        cute_hits=cute,
        std_err_p=_binomial_std_err(desirable, n),
        std_err_p_star=_binomial_std_err(cute, n),
        seed=seed,
        workers=workers,
    )
