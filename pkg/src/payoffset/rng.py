"""Pinned randomness source.

Everything stochastic in this package draws from PCG64 generators keyed by an
explicit 64-bit seed plus a tuple of stream indices (numpy ``SeedSequence``
spawn keys).  The same (seed, stream) pair yields bit-identical draws on every
platform, and disjoint stream tuples give statistically independent streams,
so repetition `r` of an experiment can use stream ``(r,)`` without ever
touching the draws of repetition `r+1`.
"""

from __future__ import annotations

import numpy as np


def spawn_generator(seed: int, *stream: int) -> np.random.Generator:
    """Generator pinned to (seed, stream...); identical arguments, identical draws."""
    if seed < 0:
        raise ValueError("seed must be a nonnegative integer")
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(s) for s in stream))
    return np.random.Generator(np.random.PCG64(ss))


def categorical_counts(probs, m: int, rng: np.random.Generator) -> np.ndarray:
    """Counts of ``m`` i.i.d. categorical draws via inverse CDF on cumulative sums.

    A uniform u lands in category k iff cdf[k-1] <= u < cdf[k]; ties at a
    boundary always move right, so zero-probability categories (empty
    half-open intervals) are never selected.
    """
    p = np.asarray(probs, dtype=float)
    if m < 1:
        raise ValueError("m must be >= 1")
    cdf = np.cumsum(p)
    cdf[-1] = 1.0  # guard the top end against rounding
    u = rng.random(int(m))
    idx = np.searchsorted(cdf, u, side="right")
    return np.bincount(idx, minlength=p.size)
