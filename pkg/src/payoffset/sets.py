"""Feasible payoff sets as halfspace systems over flattened matrix space.

For a profile (x, y) and level alpha >= 0 the set of row-player matrices,
column-player matrices, or zero-sum matrices compatible with alpha-equilibrium
play is an intersection of n (or 2n) halfspaces with the unit box.  Matrices
are flattened row-major, z[(i*n)+j] = M[i, j], and every coefficient vector
below depends on that order.  Rows are stored as built (unnormalized), so a
constraint violation is measured in payoff units and compares directly with
the additive alpha.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .games import DEFAULT_TOL, Strategy
from .lp import OPTIMAL, LpProblem, solve_lp
from .rng import spawn_generator

SET_GSG_ROW = "gsg_row"
SET_GSG_COL = "gsg_col"
SET_ZSG = "zsg"
SET_KINDS = (SET_GSG_ROW, SET_GSG_COL, SET_ZSG)


@dataclass(frozen=True, eq=False)
class SetSpec:
    """Which feasible set to build: kind, the profile, and the level alpha."""

    kind: str
    x: Strategy
    y: Strategy
    alpha: float = 0.0

    def __post_init__(self):
        if self.kind not in SET_KINDS:
            raise ValueError(f"unknown set kind {self.kind!r}")
        if self.alpha < 0:
            raise ValueError("alpha must be nonnegative")
        if self.x.n != self.y.n:
            raise ValueError("strategies must have matching dimension")

    @property
    def n(self) -> int:
        return self.x.n


@dataclass(frozen=True, eq=False)
class HalfspaceSystem:
    """rows @ z <= bounds intersected with the box [box_lo, box_hi]^dim."""

    dim: int
    rows: np.ndarray   # (k, dim)
    bounds: np.ndarray  # (k,)
    box_lo: float = -1.0
    box_hi: float = 1.0
    label: str = ""

    def __post_init__(self):
        rows = np.asarray(self.rows, dtype=float)
        if rows.size == 0:
            rows = rows.reshape(0, self.dim)
        bounds = np.asarray(self.bounds, dtype=float).reshape(-1)
        if rows.shape != (bounds.size, self.dim):
            raise ValueError("rows/bounds shape mismatch")
        if self.box_lo > self.box_hi:
            raise ValueError("empty box")
        if bounds.size and np.min(bounds) < 0:
            raise ValueError("zero must satisfy every row (bounds >= 0)")
        rows.setflags(write=False)
        bounds.setflags(write=False)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "bounds", bounds)

    @property
    def n_rows(self) -> int:
        return self.bounds.size

    def to_json(self) -> dict:
        return {"dim": int(self.dim),
                "rows": [{"c": c.tolist(), "b": float(b)}
                         for c, b in zip(self.rows, self.bounds)],
                "box": float(self.box_hi),
                "label": self.label}

    @classmethod
    def from_json(cls, data: dict) -> "HalfspaceSystem":
        rows = np.asarray([r["c"] for r in data["rows"]], dtype=float)
        bounds = np.asarray([r["b"] for r in data["rows"]], dtype=float)
        box = float(data.get("box", 1.0))
        return cls(int(data["dim"]), rows, bounds, -box, box, data.get("label", ""))


def _row_player_rows(x, y):
    """Coefficients of x.A.y - e_i.A.y <= alpha for each row i."""
    n = x.size
    coeff = np.empty((n, n, n))
    for i in range(n):
        xi = x.copy()
        xi[i] -= 1.0
        coeff[i] = np.outer(xi, y)
    return coeff.reshape(n, n * n)


def _col_player_rows(x, y, sign):
    """Coefficients of sign * (x.M.y - x.M.e_j) <= alpha for each column j."""
    n = x.size
    coeff = np.empty((n, n, n))
    for j in range(n):
        yj = y.copy()
        yj[j] -= 1.0
        coeff[j] = sign * np.outer(x, yj)
    return coeff.reshape(n, n * n)


def build_system(spec: SetSpec) -> HalfspaceSystem:
    """Halfspace description of the requested feasible payoff set."""
    x, y = spec.x.probs, spec.y.probs
    n = spec.n
    if spec.kind == SET_GSG_ROW:
        rows = _row_player_rows(x, y)
    elif spec.kind == SET_GSG_COL:
        rows = _col_player_rows(x, y, sign=1.0)
    else:
        rows = np.vstack([_row_player_rows(x, y), _col_player_rows(x, y, sign=-1.0)])
    bounds = np.full(rows.shape[0], float(spec.alpha))
    return HalfspaceSystem(n * n, rows, bounds, -1.0, 1.0, label=spec.kind)


def membership(z, system: HalfspaceSystem, tol: float = DEFAULT_TOL):
    """(is_member, max_violation) with violation measured in payoff units."""
    z = np.asarray(z, dtype=float).reshape(-1)
    if z.size != system.dim:
        raise ValueError("dimension mismatch")
    worst = max(float(np.max(z - system.box_hi)), float(np.max(system.box_lo - z)))
    if system.n_rows:
        worst = max(worst, float(np.max(system.rows @ z - system.bounds)))
    return worst <= tol, worst


def interior_point(system: HalfspaceSystem) -> np.ndarray:
    """Chebyshev center (largest inscribed sup-norm ball), or zero when flat.

    Solved as: maximize r subject to c.z + r*|c|_1 <= b per row and the box
    shrunk by r.  Sets cut by equalities have radius ~0; the zero matrix is
    then returned, since it belongs to every built system.
    """
    dim, k = system.dim, system.n_rows
    obj = np.zeros(dim + 1)
    obj[-1] = -1.0
    half_box = 0.5 * (system.box_hi - system.box_lo)
    if k:
        rows = np.hstack([system.rows, np.abs(system.rows).sum(axis=1, keepdims=True)])
        bounds = system.bounds
    else:
        rows = np.zeros((0, dim + 1))
        bounds = np.zeros(0)
    box_rows = np.hstack([np.eye(dim), np.ones((dim, 1))])
    neg_box_rows = np.hstack([-np.eye(dim), np.ones((dim, 1))])
    problem = LpProblem(
        obj,
        np.vstack([rows, box_rows, neg_box_rows]),
        np.concatenate([bounds, np.full(dim, system.box_hi), np.full(dim, -system.box_lo)]),
        np.concatenate([np.full(dim, system.box_lo), [0.0]]),
        np.concatenate([np.full(dim, system.box_hi), [half_box]]),
    )
    sol = solve_lp(problem)
    if sol.status != OPTIMAL:
        raise RuntimeError(f"interior point LP failed with status {sol.status}")
    radius = -sol.value
    if radius <= 1e-10:
        return np.zeros(dim)
    return sol.point[:dim].copy()


def _chord(system, z, direction, slack_tol=1e-12):
    """Feasible t-range of z + t * direction inside the system."""
    lo, hi = -np.inf, np.inf
    for coeffs, slack in (
        (system.rows, system.bounds - system.rows @ z) if system.n_rows else (None, None),
        (np.eye(system.dim), np.full(system.dim, system.box_hi) - z),
        (-np.eye(system.dim), z - np.full(system.dim, system.box_lo)),
    ):
        if coeffs is None:
            continue
        rate = coeffs @ direction
        slack = np.maximum(slack, 0.0)  # clamp boundary rounding
        pos = rate > slack_tol
        neg = rate < -slack_tol
        if pos.any():
            hi = min(hi, float(np.min(slack[pos] / rate[pos])))
        if neg.any():
            lo = max(lo, float(np.max(-slack[neg] / -rate[neg])))
    return lo, hi


def hit_and_run_sample(system: HalfspaceSystem, k: int, burn_in: int, seed: int) -> np.ndarray:
    """k points of an interior hit-and-run chain started at the Chebyshev center.

    Proposals outside the set (possible only for degenerate, lower-dimensional
    systems) are discarded and the chain stays put, so every returned point
    passes membership at 1e-9.  Output is a (k, dim) array, deterministic in
    (system, k, burn_in, seed), and extending k continues the same chain.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    rng = spawn_generator(seed, 0)
    z = interior_point(system)
    out = np.empty((k, system.dim))
    kept = 0
    for step in range(burn_in + k):
        direction = rng.standard_normal(system.dim)
        norm = np.linalg.norm(direction)
        if norm > 0:
            direction /= norm
            lo, hi = _chord(system, z, direction)
            if np.isfinite(lo) and np.isfinite(hi) and hi - lo > 1e-12:
                candidate = z + (lo + rng.random() * (hi - lo)) * direction
                if membership(candidate, system, tol=1e-9)[0]:
                    z = candidate
        if step >= burn_in:
            out[kept] = z
            kept += 1
    return out
