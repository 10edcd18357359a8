"""Closed-form rates: concentration bounds, knapsack sups, sample sizes.

All logarithms are natural.  Every function returns the bound as a real
number; only ``sample_size`` rounds, with a final ceiling.  The knapsack
routines expose both an exact subset supremum (a verification oracle,
enumeration-based, capped at dimension 20) and the greedy optimum of its
fractional relaxation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .games import SUPPORT_TOL

EXACT = "exact"
APPROX = "approx"

LB_EXACT_PI_MIN = "exact_pi_min"
LB_EXACT_EPS = "exact_eps"
LB_EXACT_N = "exact_n"
LB_APPROX_LOG = "approx_log"
LB_APPROX_N = "approx_n"
LB_FAMILIES = (LB_EXACT_PI_MIN, LB_EXACT_EPS, LB_EXACT_N, LB_APPROX_LOG, LB_APPROX_N)

_EXACT_KNAPSACK_MAX_DIM = 20


@dataclass(frozen=True)
class RateParams:
    """Problem parameters shared by the rate formulas."""

    n: int
    epsilon: float
    delta: float
    alpha: float | None = None
    pi_min: float | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be a positive integer")
        if not 0 < self.epsilon < 1:
            raise ValueError("epsilon must lie in (0, 1)")
        if not 0 < self.delta < 1:
            raise ValueError("delta must lie in (0, 1)")
        if self.alpha is not None and self.alpha < 0:
            raise ValueError("alpha must be nonnegative")
        if self.pi_min is not None and not 0 < self.pi_min <= 1.0 / self.n:
            raise ValueError("pi_min must lie in (0, 1/n]")


def l1_bound(D: int, m: int, delta: float) -> float:
    """High-probability bound on the l1 estimation error of a D-category MLE."""
    if m < 1 or not 0 < delta <= 1:
        raise ValueError("need m >= 1 and delta in (0, 1]")
    return math.sqrt((2.0 * math.log(1.0 / delta) + 2.0 * D * math.log(6.0 * m)) / m)


def support_id_samples(D: int, beta: float, delta: float) -> float:
    """Samples after which every category of mass >= beta has been seen w.p. 1 - delta.

    Callers round up; the value itself is log(D/delta) / log(1/(1-beta)).
    """
    if not 0 < beta < 1 or not 0 < delta < 1:
        raise ValueError("beta and delta must lie in (0, 1)")
    return math.log(D / delta) / math.log(1.0 / (1.0 - beta))


def subset_bernstein_bound(D: int, m: int, delta: float, beta: float) -> float:
    """Uniform Bernstein deviation bound over all subsets of mass at most beta."""
    if m <= 2:
        raise ValueError("need m > 2")
    load = D + math.log(1.0 / delta)
    return math.sqrt(4.0 * beta * load / m) + 4.0 * load / m


def empirical_subset_bound(D: int, m: int, delta: float, subset_mass: float) -> float:
    """Empirical-variance companion of subset_bernstein_bound.

    ``subset_mass`` is the observed mass of the subset under the estimate.
    """
    if m <= 2:
        raise ValueError("need m > 2")
    load = D + math.log(4.0 / delta)
    return math.sqrt(2.0 * subset_mass * load / m) + 4.0 * load / (m - 1)


def missing_mass_bounds(D: int, m: int, delta: float):
    """(deviation, mean) bounds for the total mass of never-observed categories."""
    if m < 1:
        raise ValueError("need m >= 1")
    deviation = 3.0 * math.sqrt(D) * math.log(1.0 / delta) / m
    return deviation, D / float(m)


def _as_probs(p):
    arr = np.asarray(getattr(p, "probs", p), dtype=float).reshape(-1)
    return arr


def subset_family_sup(x, xh, alpha: float) -> float:
    """Exact sup of sum_{i in S} (xh_i - x_i) over supported subsets of x-mass <= alpha/2.

    The empty set always qualifies, so the value is nonnegative.  Enumeration
    runs over the positive-deviation items only (others never help), in
    chunks, and errors out above dimension 20.
    """
    x, xh = _as_probs(x), _as_probs(xh)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if x.size != xh.size:
        raise ValueError("dimension mismatch")
    if x.size > _EXACT_KNAPSACK_MAX_DIM:
        raise ValueError(f"exact subset supremum capped at dimension {_EXACT_KNAPSACK_MAX_DIM}")
    budget = alpha / 2.0
    useful = (x > SUPPORT_TOL) & (xh - x > 0)
    weights = x[useful]
    values = (xh - x)[useful]
    k = weights.size
    best = 0.0
    chunk = 1 << 17
    for start in range(0, 1 << k, chunk):
        masks = np.arange(start, min(start + chunk, 1 << k), dtype=np.uint32)
        bits = (masks[:, None] >> np.arange(k, dtype=np.uint32)) & 1
        ok = bits @ weights <= budget
        if ok.any():
            best = max(best, float(np.max(bits[ok] @ values)))
    return best


def fractional_knapsack_value(x, xh, alpha: float) -> float:
    """Greedy optimum of the continuous relaxation over allocations c_i.

    Maximizes sum c_i (xh_i - x_i)/x_i with c_i in [0, 2 x_i] over supported
    items under the budget sum c_i <= alpha; the greedy fills items in
    decreasing value ratio until the budget runs out.
    """
    x, xh = _as_probs(x), _as_probs(xh)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    on = x > SUPPORT_TOL
    ratios = (xh[on] - x[on]) / x[on]
    caps = 2.0 * x[on]
    order = np.argsort(-ratios, kind="stable")
    remaining = float(alpha)
    total = 0.0
    for idx in order:
        if ratios[idx] <= 0 or remaining <= 0:
            break
        take = min(caps[idx], remaining)
        total += take * ratios[idx]
        remaining -= take
    return total


def knapsack_subset_sup(x, xh, alpha: float):
    """(exact subset supremum, fractional relaxation optimum)."""
    return subset_family_sup(x, xh, alpha), fractional_knapsack_value(x, xh, alpha)


def tech_lemma_bound(c1: float, c2: float, K: float, n: int, delta: float) -> float:
    """Closed-form cap on the first t with (log(c1/delta) + n log(c2 t)) / t <= K^2."""
    if min(c1, c2, K) <= 0 or n < 1 or not 0 < delta < 1:
        raise ValueError("need positive c1, c2, K, n and delta in (0, 1)")
    k2 = K * K
    return 2.0 * (2.0 + 4.0 * math.log(c1 / delta) / k2
                  + (4.0 * n / k2) * math.log(2.0 * n * c2 / k2))


def tech_lemma_threshold(c1: float, c2: float, K: float, n: int, delta: float) -> int:
    """Direct search for the threshold the bound above caps (verification oracle)."""
    k2 = K * K

    def ok(t):
        return (math.log(c1 / delta) + n * math.log(c2 * t)) / t <= k2

    hi = 1
    while not ok(hi):
        hi *= 2
        if hi > 1 << 62:
            raise OverflowError("threshold search exceeded 2^62")
    lo = hi // 2
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


def sample_size(regime: str, p: RateParams) -> int:
    """Samples sufficient for an (epsilon, delta)-correct recommended set.

    exact regime (alpha = 0, needs pi_min):
        ceil(max{ log(4n/d)/log(1/(1-pi_min)),
                  2 (2 + 4 log(4/d)/K^2 + (4n/K^2) log(12 n/K^2)) }), K = eps/sqrt(128).
    approx regime (needs alpha > 0): ceil of the max of
        m1 = 1 + 4 (n + log(24/d)) / alpha
        m2 = 16 * 192^2 (n + log(6/d)) / (alpha eps^2)
        m3 = 960 (n + log(6/d)) / (alpha eps)
        m4 = 576 sqrt(n) log(6/d) / (eps alpha).
    """
    n, eps, delta = p.n, p.epsilon, p.delta
    if regime == EXACT:
        if p.pi_min is None:
            raise ValueError("exact regime needs pi_min")
        k2 = (eps / math.sqrt(128.0)) ** 2
        support_term = math.log(4.0 * n / delta) / math.log(1.0 / (1.0 - p.pi_min))
        concentration_term = 2.0 * (2.0 + 4.0 * math.log(4.0 / delta) / k2
                                    + (4.0 * n / k2) * math.log(12.0 * n / k2))
        return math.ceil(max(support_term, concentration_term))
    if regime == APPROX:
        if p.alpha is None or p.alpha <= 0:
            raise ValueError("approx regime needs alpha > 0")
        alpha = p.alpha
        load6 = n + math.log(6.0 / delta)
        m1 = 1.0 + 4.0 * (n + math.log(24.0 / delta)) / alpha
        m2 = 16.0 * 192.0 ** 2 * load6 / (alpha * eps * eps)
        m3 = 960.0 * load6 / (alpha * eps)
        m4 = 576.0 * math.sqrt(n) * math.log(6.0 / delta) / (eps * alpha)
        return math.ceil(max(m1, m2, m3, m4))
    raise ValueError(f"unknown regime {regime!r}")


def minimax_lower_bound(family: str, p: RateParams) -> float:
    """Minimax expected-sample lower bounds, enforced on their validity ranges."""
    n, eps, delta = p.n, p.epsilon, p.delta
    log4d = math.log(1.0 / (4.0 * delta))
    if family == LB_EXACT_PI_MIN:
        if p.pi_min is None:
            raise ValueError("exact_pi_min needs pi_min")
        return log4d / math.log(1.0 / (1.0 - p.pi_min))
    if family == LB_EXACT_EPS:
        if eps >= 1.0 / math.sqrt(32.0):
            raise ValueError("exact_eps requires epsilon < 1/sqrt(32)")
        return log4d / (16.0 * eps * eps)
    if family == LB_EXACT_N:
        if eps > 1.0 / 384.0:
            raise ValueError("exact_n requires epsilon <= 1/384")
        if n < 20 or n % 16 != 0:
            raise ValueError("exact_n requires n >= 20 with n divisible by 16")
        return math.log(2.0) * n / (40.0 * 192.0 ** 2 * eps * eps)
    if family == LB_APPROX_LOG:
        if p.alpha is None or not 0 < p.alpha < 0.25:
            raise ValueError("approx_log requires alpha in (0, 1/4)")
        if eps > 0.125:
            raise ValueError("approx_log requires epsilon <= 1/8")
        return log4d / (18.0 * eps * eps * p.alpha)
    if family == LB_APPROX_N:
        if p.alpha is None or not 0 < p.alpha < 0.5:
            raise ValueError("approx_n requires alpha in (0, 1/2)")
        if eps > 1.0 / 128.0:
            raise ValueError("approx_n requires epsilon <= 1/128")
        return math.log(2.0) * n / (20.0 * 128.0 ** 2 * p.alpha * eps * eps)
    raise ValueError(f"unknown lower-bound family {family!r}")
