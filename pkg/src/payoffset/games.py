"""Core bimatrix-game types and equilibrium checks.

Conventions used throughout the package:

* both players have ``n`` actions; payoffs are losses, entries in [-1, 1];
* the row player mixes with ``x``, the column player with ``y``;
* an entry counts as played (is in the support) iff it exceeds 1e-12, which
  keeps hand-typed float profiles from sprouting phantom support;
* all "<=" equilibrium checks carry an additive tolerance, default 1e-9,
  because downstream constructions and LP solutions live in floating point.

A pair (x, y) is an alpha-equilibrium of the general-sum game (A, B) when
``x.A.y <= e_i.A.y + alpha`` for every row i and ``x.B.y <= x.B.e_j + alpha``
for every column j; the zero-sum game A additionally requires
``x.A.e_j - alpha <= x.A.y``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .rng import categorical_counts, spawn_generator

SUPPORT_TOL = 1e-12
SIMPLEX_TOL = 1e-12
ENTRY_TOL = 1e-12
DEFAULT_TOL = 1e-9

GSG_ROW = "gsg_row"
GSG_COL = "gsg_col"
ZSG_COL = "zsg_col"
GAP_KINDS = (GSG_ROW, GSG_COL, ZSG_COL)


def _frozen_array(obj, name, value):
    value.setflags(write=False)
    object.__setattr__(obj, name, value)


@dataclass(frozen=True, eq=False)
class Strategy:
    """Probability vector over n actions."""

    probs: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float).reshape(-1)
        if p.size == 0:
            raise ValueError("strategy needs at least one action")
        if np.any(p < -SIMPLEX_TOL) or np.any(p > 1.0 + SIMPLEX_TOL):
            raise ValueError("strategy entries must lie in [0, 1]")
        if abs(p.sum() - 1.0) > SIMPLEX_TOL:
            raise ValueError("strategy entries must sum to 1")
        _frozen_array(self, "probs", p)

    @property
    def n(self) -> int:
        return self.probs.size

    def __iter__(self):
        return iter(self.probs)


@dataclass(frozen=True, eq=False)
class StrategyProfile:
    """A pair of mixed strategies (row player x, column player y)."""

    x: Strategy
    y: Strategy

    def __post_init__(self):
        if self.x.n != self.y.n:
            raise ValueError("x and y must have the same number of actions")

    @property
    def n(self) -> int:
        return self.x.n

    def to_json(self) -> dict:
        return {"x": self.x.probs.tolist(), "y": self.y.probs.tolist()}

    @classmethod
    def from_json(cls, data: dict) -> "StrategyProfile":
        return cls(Strategy(data["x"]), Strategy(data["y"]))


@dataclass(frozen=True, eq=False)
class PayoffMatrix:
    """An n x n loss matrix with entries in [-1, 1]."""

    entries: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("payoff matrix must be square")
        if np.any(np.abs(a) > 1.0 + ENTRY_TOL):
            raise ValueError("payoff entries must lie in [-1, 1]")
        _frozen_array(self, "entries", a)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def flatten(self) -> np.ndarray:
        """Row-major vectorization; z[(i*n)+j] = entries[i, j]."""
        return self.entries.reshape(-1)

    def to_json(self) -> dict:
        return {"entries": self.entries.tolist()}

    @classmethod
    def from_json(cls, data: dict) -> "PayoffMatrix":
        return cls(np.asarray(data["entries"], dtype=float))

    @classmethod
    def from_flat(cls, z, n: int) -> "PayoffMatrix":
        return cls(np.asarray(z, dtype=float).reshape(n, n))


@dataclass(frozen=True, eq=False)
class SampleRecord:
    """Per-action counts from m i.i.d. rounds of play, plus the seed used."""

    m: int
    row_counts: np.ndarray
    col_counts: np.ndarray
    seed: int

    def __post_init__(self):
        rc = np.asarray(self.row_counts, dtype=np.int64)
        cc = np.asarray(self.col_counts, dtype=np.int64)
        if rc.size != cc.size:
            raise ValueError("row and column counts must have equal length")
        if np.any(rc < 0) or np.any(cc < 0):
            raise ValueError("counts must be nonnegative")
        if rc.sum() != self.m or cc.sum() != self.m:
            raise ValueError("counts must sum to m")
        _frozen_array(self, "row_counts", rc)
        _frozen_array(self, "col_counts", cc)

    @property
    def n(self) -> int:
        return self.row_counts.size

    def to_json(self) -> dict:
        return {"m": int(self.m), "row_counts": self.row_counts.tolist(),
                "col_counts": self.col_counts.tolist(), "seed": int(self.seed)}

    @classmethod
    def from_json(cls, data: dict) -> "SampleRecord":
        return cls(int(data["m"]), np.asarray(data["row_counts"]),
                   np.asarray(data["col_counts"]), int(data["seed"]))


def support(s: Strategy) -> set[int]:
    """Zero-based indices played with probability above the support threshold."""
    return set(np.nonzero(s.probs > SUPPORT_TOL)[0].tolist())


def pi_min(profile: StrategyProfile) -> float:
    """Smallest positive probability across both players; always in (0, 1/n]."""
    xp, yp = profile.x.probs, profile.y.probs
    positives = np.concatenate([xp[xp > SUPPORT_TOL], yp[yp > SUPPORT_TOL]])
    return float(positives.min())


def nash_gap(kind: str, matrix: PayoffMatrix, x: Strategy, y: Strategy) -> float:
    """Worst deviation gain of one player against the bilinear value x.M.y.

    gsg_row: max_i (x.M.y - e_i.M.y); gsg_col: max_j (x.M.y - x.M.e_j);
    zsg_col: max_j (x.M.e_j - x.M.y).  Always within [-2, 2].
    """
    if kind not in GAP_KINDS:
        raise ValueError(f"unknown gap kind {kind!r}")
    a = matrix.entries
    if x.n != a.shape[0] or y.n != a.shape[1]:
        raise ValueError("dimension mismatch between matrix and strategies")
    row_values = a @ y.probs
    col_values = x.probs @ a
    value = float(x.probs @ row_values)
    if kind == GSG_ROW:
        return float(value - row_values.min())
    if kind == GSG_COL:
        return float(value - col_values.min())
    return float(col_values.max() - value)


def is_alpha_nash(kind: str, profile: StrategyProfile, alpha: float, *,
                  A: PayoffMatrix, B: PayoffMatrix | None = None,
                  tol: float = DEFAULT_TOL) -> bool:
    """Whether the profile is an alpha-equilibrium of the given game.

    kind "gsg" takes both loss matrices (A, B); kind "zsg" takes A only and
    checks the two-sided zero-sum condition.
    """
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    x, y = profile.x, profile.y
    if kind == "gsg":
        if B is None:
            raise ValueError("general-sum check needs both matrices")
        return (nash_gap(GSG_ROW, A, x, y) <= alpha + tol
                and nash_gap(GSG_COL, B, x, y) <= alpha + tol)
    if kind == "zsg":
        return (nash_gap(GSG_ROW, A, x, y) <= alpha + tol
                and nash_gap(ZSG_COL, A, x, y) <= alpha + tol)
    raise ValueError(f"unknown game kind {kind!r}")


def support_characterization(A: PayoffMatrix, x: Strategy, y: Strategy,
                             kind: str = "row_only", tol: float = DEFAULT_TOL) -> bool:
    """Equal-payoff support test equivalent to the exact equilibrium conditions.

    row_only: the rows in supp(x) share one value of e_i.A.y and every other
    row is at least that value.  zero_sum: additionally the columns in
    supp(y) share the value x.A.e_j = x.A.y and the remaining columns sit
    below it.
    """
    a = A.entries
    if x.n != a.shape[0] or y.n != a.shape[1]:
        raise ValueError("dimension mismatch")
    row_values = a @ y.probs
    on = x.probs > SUPPORT_TOL
    row_ok = True
    if on.any():
        base = row_values[on]
        row_ok = (base.max() - base.min() <= tol
                  and (not (~on).any() or row_values[~on].min() >= base.max() - tol))
    if kind == "row_only":
        return bool(row_ok)
    if kind != "zero_sum":
        raise ValueError(f"unknown characterization kind {kind!r}")
    col_values = x.probs @ a
    value = float(x.probs @ row_values)
    on_y = y.probs > SUPPORT_TOL
    col_ok = True
    if on_y.any():
        base = col_values[on_y]
        col_ok = (np.abs(base - value).max() <= tol
                  and (not (~on_y).any() or col_values[~on_y].max() <= value + tol))
    return bool(row_ok and col_ok)


def sample_profile(profile: StrategyProfile, m: int, seed: int) -> SampleRecord:
    """Aggregate counts of m i.i.d. rounds; fully determined by (profile, m, seed)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    rows = categorical_counts(profile.x.probs, m, spawn_generator(seed, 0))
    cols = categorical_counts(profile.y.probs, m, spawn_generator(seed, 1))
    return SampleRecord(int(m), rows, cols, int(seed))


def empirical_profile(record: SampleRecord) -> StrategyProfile:
    """Maximum-likelihood (frequency) estimates of both strategies."""
    m = float(record.m)
    return StrategyProfile(Strategy(record.row_counts / m),
                           Strategy(record.col_counts / m))
