"""Seeded, reproducible Monte Carlo engine for Bernoulli experiments.

Reproducibility contract
------------------------
A run is a pure function of ``(experiment, n, seed, confidence)``.  The n
trials are split into fixed-size logical batches of ``BATCH_SIZE`` samples;
batch ``b`` draws from its own PCG64 generator seeded with
``derive_stream_seed(seed, b)``.  The ``shards`` argument only distributes
whole batches across worker threads, so the estimate is bit-identical for
any shard count and for any physical parallelism.  Batch results are
combined as exact integer success counts, never as float averages.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np
from scipy.special import ndtri

# Number of samples drawn from each logical generator stream.  Part of the
# reproducibility contract: changing it changes every estimate.
BATCH_SIZE = 1 << 15

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def derive_stream_seed(seed: int, index: int) -> int:
    """Derive the 64-bit seed of logical stream ``index`` from the run seed.

    SplitMix64 finalizer applied to ``seed + (index + 1) * golden`` where
    ``golden = 0x9E3779B97F4A7C15``; all arithmetic mod 2**64.  Bit-exact by
    construction, so shard streams can be re-derived by any implementation.
    """
    z = (seed + (index + 1) * _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    return z ^ (z >> 31)


def stream_generator(seed: int, index: int) -> np.random.Generator:
    """PCG64 generator for logical stream ``index`` of a run seeded ``seed``."""
    return np.random.Generator(np.random.PCG64(derive_stream_seed(seed, index)))


@dataclass(frozen=True)
class Experiment:
    """A Bernoulli trial: a batch sampler plus a deterministic event predicate.

    ``sample(rng, size)`` draws ``size`` trials from the given generator and
    returns them in any batch form; ``event(batch)`` maps that batch to a
    boolean array with one entry per trial.
    """

    name: str
    sample: Callable[[np.random.Generator, int], Any]
    event: Callable[[Any], np.ndarray]


@dataclass(frozen=True)
class Estimate:
    """Point estimate and Wilson confidence interval for an event probability."""

    p_hat: float
    n: int
    successes: int
    ci_low: float
    ci_high: float
    confidence: float
    seed: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not 0 <= self.successes <= self.n:
            raise ValueError("successes must lie in [0, n]")
        if self.p_hat != self.successes / self.n:
            raise ValueError("p_hat must equal successes / n")
        if not self.ci_low <= self.p_hat <= self.ci_high:
            raise ValueError("interval must contain the point estimate")


def wilson_interval(successes: int, n: int, confidence: float = 0.95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion.

    Well-behaved at 0 and n successes and never leaves [0, 1].
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 <= successes <= n:
        raise ValueError("successes must lie in [0, n]")
    if not 0.0 < confidence < 1.0:
        raise ValueError("confidence must lie in (0, 1)")
    z = float(ndtri(0.5 * (1.0 + confidence)))
    p = successes / n
    denom = 1.0 + z * z / n
    center = (p + z * z / (2.0 * n)) / denom
    margin = (z / denom) * math.sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n))
    # the boundary endpoints are exactly 0 and 1 algebraically; don't let
    # floating-point roundoff pull them inside
    low = 0.0 if successes == 0 else max(0.0, center - margin)
    high = 1.0 if successes == n else min(1.0, center + margin)
    return low, high


def _count_batch(experiment: Experiment, seed: int, index: int, size: int) -> int:
    rng = stream_generator(seed, index)
    hits = experiment.event(experiment.sample(rng, size))
    return int(np.count_nonzero(hits))


def run(
    experiment: Experiment,
    n: int,
    seed: int,
    shards: int = 1,
    confidence: float = 0.95,
) -> Estimate:
    """Run ``n`` Bernoulli trials of ``experiment`` and estimate P(event).

    ``shards`` workers may process batches concurrently; the result does not
    depend on it (see module docstring).  Raises ValueError when n < 1,
    shards < 1, or n is not divisible by shards.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if shards < 1:
        raise ValueError("shards must be >= 1")
    if n % shards != 0:
        raise ValueError(f"n={n} is not divisible by shards={shards}")
    seed &= _MASK64

    n_batches = (n + BATCH_SIZE - 1) // BATCH_SIZE
    sizes = [min(BATCH_SIZE, n - b * BATCH_SIZE) for b in range(n_batches)]

    if shards == 1 or n_batches == 1:
        successes = sum(
            _count_batch(experiment, seed, b, sizes[b]) for b in range(n_batches)
        )
    else:
        with ThreadPoolExecutor(max_workers=shards) as pool:
            counts = pool.map(
                lambda b: _count_batch(experiment, seed, b, sizes[b]), range(n_batches)
            )
            successes = sum(counts)

    ci_low, ci_high = wilson_interval(successes, n, confidence)
    return Estimate(
        p_hat=successes / n,
        n=n,
        successes=successes,
        ci_low=ci_low,
        ci_high=ci_high,
        confidence=confidence,
        seed=seed,
    )
