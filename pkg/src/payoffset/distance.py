"""Sup-norm distances between feasible payoff sets.

The inner problem (distance from a point to a halfspace system) is an exact
LP: minimize t such that a shifted copy of the point within sup-norm t is
feasible.  The outer supremum over one set is approximated two ways:

* a Monte-Carlo scheme (hit-and-run samples, the Chebyshev center, and
  box corners clipped into the set) which always yields a lower bound;
* an exhaustive cell-center grid for n = 2, exact up to the grid resolution
  for the outer sup while the inner distance stays exact.

Closed-form upper bounds on the Hausdorff distance are provided for the
exact-equilibrium (same support) and alpha > 0 regimes; product sets over
both players combine factor distances by max (sup-norm product metric).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .games import Strategy, support
from .lp import OPTIMAL, LpProblem, solve_lp
from .rates import subset_family_sup
from .rng import spawn_generator
from .sets import HalfspaceSystem, SetSpec, build_system, hit_and_run_sample, interior_point, membership

MODE_EXACT = "exact"
MODE_MC_LOWER = "mc_lower"
MODE_GRID = "grid_oracle"
MODE_PAPER_UPPER = "paper_upper"

UB_EXACT_GSG = "exact_gsg"
UB_EXACT_ZSG = "exact_zsg"
UB_APPROX = "approx"

_MEMBER_TOL = 1e-9


@dataclass(frozen=True)
class HausdorffEstimate:
    """max of the two directed distances, tagged with how it was computed."""

    value: float
    mode: str
    resolution_or_samples: float
    directed_ab: float
    directed_ba: float

    def __post_init__(self):
        if abs(self.value - max(self.directed_ab, self.directed_ba)) > 1e-12:
            raise ValueError("value must be the max of the directed distances")
        if self.value < 0:
            raise ValueError("distances are nonnegative")

    def to_json(self) -> dict:
        return {"value": self.value, "mode": self.mode,
                "resolution_or_samples": self.resolution_or_samples,
                "directed_ab": self.directed_ab, "directed_ba": self.directed_ba}


def point_to_set(z, system: HalfspaceSystem) -> float:
    """Exact sup-norm distance from z to the system, via the epigraph LP.

    Variables (z', t): minimize t subject to z' in the system and
    |z'_k - z_k| <= t for all k.  Zero iff z is a member (within tolerance).
    """
    z = np.asarray(z, dtype=float).reshape(-1)
    dim = system.dim
    if z.size != dim:
        raise ValueError("dimension mismatch")
    inside, _ = membership(z, system, tol=_MEMBER_TOL)
    if inside:
        return 0.0
    k = system.n_rows
    eye = np.eye(dim)
    ones = np.ones((dim, 1))
    rows = np.vstack([
        np.hstack([system.rows, np.zeros((k, 1))]),
        np.hstack([eye, -ones]),
        np.hstack([-eye, -ones]),
    ])
    bounds = np.concatenate([system.bounds, z, -z])
    t_max = float(np.max(np.abs(z))) + abs(system.box_hi) + abs(system.box_lo) + 1.0
    problem = LpProblem(
        np.concatenate([np.zeros(dim), [1.0]]),
        rows, bounds,
        np.concatenate([np.full(dim, system.box_lo), [0.0]]),
        np.concatenate([np.full(dim, system.box_hi), [t_max]]),
    )
    sol = solve_lp(problem)
    if sol.status != OPTIMAL:
        raise RuntimeError(f"point-to-set LP unexpectedly {sol.status}")
    return max(0.0, sol.value)


def _clipped_corners(system: HalfspaceSystem, seed: int) -> np.ndarray:
    """Box corners pulled inside the set by scaling toward the zero matrix.

    All 2^dim sign patterns when that is small, otherwise a deterministic
    random batch.  Scaling works because zero satisfies every built system.
    """
    dim = system.dim
    if 2 ** dim <= 64:
        masks = np.arange(2 ** dim, dtype=np.uint32)
        signs = np.where((masks[:, None] >> np.arange(dim, dtype=np.uint32)) & 1, 1.0, -1.0)
    else:
        rng = spawn_generator(seed, 99)
        signs = np.where(rng.random((2 * dim, dim)) < 0.5, -1.0, 1.0)
    corners = signs * max(abs(system.box_lo), abs(system.box_hi))
    if system.n_rows == 0:
        return corners
    loads = corners @ system.rows.T  # (c, k)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(loads > system.bounds[None, :],
                          system.bounds[None, :] / loads, 1.0)
    ratios = np.nan_to_num(ratios, nan=1.0, posinf=1.0)
    scale = np.clip(ratios.min(axis=1), 0.0, 1.0)
    return corners * scale[:, None]


def directed_distance_mc(from_sys: HalfspaceSystem, to_sys: HalfspaceSystem,
                         k: int, seed: int) -> float:
    """Sampled lower bound of sup_{z in from} dist(z, to).

    Evaluates the exact inner distance at k hit-and-run samples of ``from``
    plus its Chebyshev center and clipped box corners; nondecreasing in k for
    a fixed seed because the chain is simply extended.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if from_sys.dim != to_sys.dim:
        raise ValueError("dimension mismatch")
    points = [hit_and_run_sample(from_sys, k, burn_in=32, seed=seed),
              interior_point(from_sys)[None, :],
              _clipped_corners(from_sys, seed)]
    best = 0.0
    for z in np.vstack(points):
        inside, _ = membership(z, to_sys, tol=_MEMBER_TOL)
        if not inside:
            best = max(best, point_to_set(z, to_sys))
    return best


def hausdorff_mc(a: HalfspaceSystem, b: HalfspaceSystem, k: int, seed: int) -> HausdorffEstimate:
    """Monte-Carlo Hausdorff lower bound; directions use disjoint seed streams."""
    d_ab = directed_distance_mc(a, b, k, _stream_seed(seed, 0))
    d_ba = directed_distance_mc(b, a, k, _stream_seed(seed, 1))
    return HausdorffEstimate(max(d_ab, d_ba), MODE_MC_LOWER, float(k), d_ab, d_ba)


def _stream_seed(seed: int, index: int) -> int:
    return int(np.random.SeedSequence(entropy=int(seed), spawn_key=(index,)).generate_state(1)[0])


def _grid_axis(resolution: float) -> np.ndarray:
    count = int(np.floor(2.0 / resolution))
    return -1.0 + resolution * (np.arange(count) + 0.5)


def _grid_points(resolution: float, dim: int) -> np.ndarray:
    axis = _grid_axis(resolution)
    grids = np.meshgrid(*([axis] * dim), indexing="ij")
    return np.stack([g.reshape(-1) for g in grids], axis=1)


def _directed_grid(points: np.ndarray, target: HalfspaceSystem) -> float:
    """Exact max over grid members of the inner distance into ``target``.

    Members of the target contribute zero.  For the rest, the dominant
    violated row gives a lower bound v/|c|_1 which is exact whenever the
    single-row sup-norm projection lands feasible; the few points where it
    does not are finished with the LP, worst candidates first, pruned by a
    scaling upper bound.
    """
    if points.shape[0] == 0:
        return 0.0
    viol = points @ target.rows.T - target.bounds[None, :]  # (N, k)
    worst = viol.max(axis=1)
    outside = worst > _MEMBER_TOL
    if not outside.any():
        return 0.0
    pts = points[outside]
    viol = viol[outside]
    norms = np.abs(target.rows).sum(axis=1)
    lower = (viol / norms[None, :]).max(axis=1)
    rows_star = (viol / norms[None, :]).argmax(axis=1)

    # single-row sup-norm projection: shift every coordinate by v/|c|_1
    # against the sign of the dominant row, then clip into the box
    c_star = target.rows[rows_star]
    shift = (lower / norms[rows_star])[:, None] * np.sign(c_star)
    proj = np.clip(pts - shift, target.box_lo, target.box_hi)
    feasible = (proj @ target.rows.T - target.bounds[None, :]).max(axis=1) <= 1e-12
    moved = np.abs(proj - pts).max(axis=1)
    exact = feasible & (moved <= lower + 1e-12)

    best = float(lower[exact].max()) if exact.any() else 0.0
    hard = np.nonzero(~exact)[0]
    if hard.size:
        # scaling toward zero gives a cheap upper bound for pruning
        loads = pts[hard] @ target.rows.T
        with np.errstate(divide="ignore", invalid="ignore"):
            ratios = np.where(loads > target.bounds[None, :],
                              target.bounds[None, :] / loads, 1.0)
        ratios = np.nan_to_num(ratios, nan=1.0, posinf=1.0)
        scale = np.clip(ratios.min(axis=1), 0.0, 1.0)
        upper = (1.0 - scale) * np.abs(pts[hard]).max(axis=1)
        order = hard[np.argsort(-upper)]
        upper_sorted = upper[np.argsort(-upper)]
        for idx, cap in zip(order, upper_sorted):
            if cap <= best:
                break
            best = max(best, point_to_set(pts[idx], target))
    return best


def hausdorff_grid_2x2(a: SetSpec, b: SetSpec, resolution: float) -> HausdorffEstimate:
    """Brute-force Hausdorff oracle for 2x2 games.

    Enumerates cell centers of a resolution-spaced grid on [-1, 1]^4, keeps
    the members of each set, and takes the exact inner distance into the
    other set.  The only error is the outer-sup discretization, at most one
    resolution.
    """
    if a.n != 2 or b.n != 2:
        raise ValueError("grid oracle is restricted to n = 2")
    if resolution <= 0:
        raise ValueError("resolution must be positive")
    sys_a, sys_b = build_system(a), build_system(b)
    points = _grid_points(resolution, 4)
    in_a = (points @ sys_a.rows.T - sys_a.bounds[None, :]).max(axis=1) <= _MEMBER_TOL
    in_b = (points @ sys_b.rows.T - sys_b.bounds[None, :]).max(axis=1) <= _MEMBER_TOL
    d_ab = _directed_grid(points[in_a], sys_b)
    d_ba = _directed_grid(points[in_b], sys_a)
    return HausdorffEstimate(max(d_ab, d_ba), MODE_GRID, float(resolution), d_ab, d_ba)


def l1_distance(a: Strategy, b: Strategy) -> float:
    return float(sum(abs(u - v) for u, v in zip(a.probs, b.probs)))


def f_alpha(p: Strategy, ph: Strategy, alpha: float) -> float:
    """One player's closed-form Hausdorff error term for alpha > 0.

    (16/alpha) * [ sup over budgeted subsets of p of the estimate excess
    + the same sup with roles swapped + the mass of p never seen in ph ].
    """
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    sup_fwd = subset_family_sup(p.probs, ph.probs, alpha)
    sup_bwd = subset_family_sup(ph.probs, p.probs, alpha)
    missing = float(np.sum(p.probs[ph.probs <= 1e-12]))
    return (16.0 / alpha) * (sup_fwd + sup_bwd + missing)


def hausdorff_upper_bound(kind: str, x: Strategy, xh: Strategy, y: Strategy,
                          yh: Strategy, alpha: float = 0.0) -> float:
    """Closed-form Hausdorff upper bounds between true and estimated sets.

    exact_gsg: 4 (|x - xh|_1 + |y - yh|_1), requires matching supports;
    exact_zsg: 8 (same), by splitting the move into per-player steps;
    approx:    f_alpha(x, xh) + f_alpha(y, yh), requires alpha > 0.
    """
    if kind in (UB_EXACT_GSG, UB_EXACT_ZSG):
        if support(x) != support(xh) or support(y) != support(yh):
            raise ValueError("exact-regime bounds need matching supports")
        total = l1_distance(x, xh) + l1_distance(y, yh)
        return (4.0 if kind == UB_EXACT_GSG else 8.0) * total
    if kind == UB_APPROX:
        if alpha <= 0:
            raise ValueError("approx bound needs alpha > 0")
        return f_alpha(x, xh, alpha) + f_alpha(y, yh, alpha)
    raise ValueError(f"unknown upper bound kind {kind!r}")
