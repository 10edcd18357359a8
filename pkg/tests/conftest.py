"""Shared random-instance generators for the test suite.

Feasible matrices are produced constructively: general-sum row/column sets by
shifting whole rows (columns) until the supported actions are exactly
indifferent, zero-sum sets by solving a random game's equilibrium with the
package's own LP and keeping the optimal strategies.
"""

import numpy as np
import pytest

from payoffset.games import PayoffMatrix, Strategy, StrategyProfile
from payoffset.lp import OPTIMAL, LpProblem, solve_lp


def random_strategy(rng, n, support_size=None, min_mass=0.05):
    """Dirichlet-style strategy on a random support of the given size."""
    if support_size is None:
        support_size = int(rng.integers(1, n + 1))
    idx = rng.choice(n, size=support_size, replace=False)
    raw = rng.uniform(min_mass, 1.0, size=support_size)
    probs = np.zeros(n)
    probs[idx] = raw / raw.sum()
    return Strategy(probs)


def perturb_same_support(rng, s, scale=0.1):
    """Multiplicatively jitter the supported entries, keeping the support."""
    p = s.probs.copy()
    on = p > 1e-12
    p[on] *= 1.0 + scale * rng.uniform(-1.0, 1.0, size=on.sum())
    p[on] /= p[on].sum()
    return Strategy(p)


def random_row_feasible(rng, x, y):
    """Random member of the row-player exact set for (x, y).

    Start from a matrix in [-0.5, 0.5], then shift each supported row by a
    constant so its y-average hits zero, and each unsupported row so its
    y-average is a nonnegative amount above zero.
    """
    n = x.n
    base = rng.uniform(-0.5, 0.5, size=(n, n))
    averages = base @ y.probs
    on = x.probs > 1e-12
    shift = np.where(on, -averages, 0.0)
    for i in np.nonzero(~on)[0]:
        head = -averages[i]
        room = (1.0 - base[i].max()) + averages[i]  # keep entries within 1
        shift[i] = head + rng.uniform(0.0, max(room, 0.0))
    return PayoffMatrix(np.clip(base + shift[:, None], -1.0, 1.0))


def random_col_feasible(rng, x, y):
    """Random member of the column-player exact set for (x, y)."""
    transposed = random_row_feasible(rng, y, x)
    return PayoffMatrix(transposed.entries.T)


def _epigraph_optimal(payoffs):
    """p on the simplex minimizing max_j (payoffs^T p)_j, via the epigraph LP."""
    n = payoffs.shape[0]
    rows = np.vstack([
        np.hstack([payoffs.T, -np.ones((n, 1))]),
        np.concatenate([np.ones(n), [0.0]])[None, :],
        np.concatenate([-np.ones(n), [0.0]])[None, :],
    ])
    bounds = np.concatenate([np.zeros(n), [1.0, -1.0]])
    problem = LpProblem(np.concatenate([np.zeros(n), [1.0]]), rows, bounds,
                        np.concatenate([np.zeros(n), [-1.0]]),
                        np.concatenate([np.ones(n), [1.0]]))
    sol = solve_lp(problem)
    assert sol.status == OPTIMAL
    p = np.maximum(sol.point[:n], 0.0)
    return Strategy(p / p.sum())


def random_zero_sum_equilibrium(rng, n):
    """(A, profile) with the profile an exact equilibrium of the random matrix A."""
    a = rng.uniform(-1.0, 1.0, size=(n, n))
    x = _epigraph_optimal(a)        # row player: min_x max_j x.A.e_j
    y = _epigraph_optimal(-a.T)     # column player: max_y min_i e_i.A.y
    return PayoffMatrix(a), StrategyProfile(x, y)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
