"""Explicit payoff-matrix constructions between nearby feasible sets.

Each routine takes a matrix feasible for one strategy profile and produces a
matrix feasible for a perturbed profile, together with a certificate: the
sup-norm distance actually achieved and the closed-form bound it is promised
to respect.  The exact-equilibrium constructions redistribute payoffs so the
supported actions stay exactly indifferent under the perturbed opponent
strategy; the alpha > 0 constructions shrink the whole matrix until the
worst deviation gap is back below alpha.

Preconditions are enforced, not assumed: every routine verifies that the
input matrix is feasible for its source profile (at tolerance) and fails
loudly otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .games import (DEFAULT_TOL, GSG_COL, GSG_ROW, SUPPORT_TOL, ZSG_COL,
                    PayoffMatrix, Strategy, is_alpha_nash, nash_gap, support,
                    StrategyProfile)
from .sets import SET_GSG_COL, SET_GSG_ROW, SET_ZSG, SetSpec, build_system, membership

_TIE_TOL = 1e-12  # score ties: maximizer sets are closed under this slack
_REPORT_SLACK = 1e-7


@dataclass(frozen=True, eq=False)
class ConstructionReport:
    """Output matrix plus the achieved distance and its certified bound."""

    output: PayoffMatrix
    distance: float
    certified_bound: float
    membership_violation: float

    def __post_init__(self):
        if self.distance > self.certified_bound + _REPORT_SLACK:
            raise ValueError("construction exceeded its certified bound")
        if self.membership_violation > _REPORT_SLACK:
            raise ValueError("construction output is not feasible for the target set")

    def to_json(self) -> dict:
        return {"output": self.output.to_json(),
                "distance": float(self.distance),
                "certified_bound": float(self.certified_bound),
                "membership_violation": float(self.membership_violation)}


def _l1(a: Strategy, b: Strategy) -> float:
    # plain left-to-right summation so reports are reproducible verbatim
    return float(sum(abs(u - v) for u, v in zip(a.probs, b.probs)))


def _report(entries, reference, bound, target_spec):
    # inputs feasible only at tolerance can overshoot the box by the same
    # tolerance; clipping that dust keeps the entry-range invariant intact
    out = PayoffMatrix(np.clip(entries, -1.0, 1.0))
    distance = float(np.max(np.abs(out.entries - reference)))
    _, violation = membership(out.flatten(), build_system(target_spec))
    return ConstructionReport(out, distance, bound, violation)


def _require_same_support(a: Strategy, b: Strategy, who: str):
    if support(a) != support(b):
        raise ValueError(f"support mismatch between {who} strategies")


def _redistribute_rows(a, on_support, scores, delta):
    """Shift rows so supported rows tie at the top score, then rescale.

    Supported rows at the maximum of ``scores`` keep their payoffs; the other
    supported rows gain their score deficit; unsupported rows gain the full
    slack ``delta``.  Everything is divided by 1 + delta to stay in [-1, 1].
    """
    top = scores[on_support].max()
    deficits = top - scores
    if deficits[on_support].max() > delta + 1e-9:
        raise ValueError("score deficit exceeds the perturbation slack; "
                         "input matrix is not feasible for the source profile")
    shift = np.where(on_support, np.where(deficits <= _TIE_TOL, 0.0, deficits), delta)
    return (a + shift[:, None]) / (1.0 + delta)


def exact_gsg_row(A: PayoffMatrix, x: Strategy, y: Strategy, xh: Strategy,
                  yh: Strategy, tol: float = DEFAULT_TOL) -> ConstructionReport:
    """Row-player construction for exact equilibria in general-sum games.

    Given A compatible with (x, y) and a same-support perturbation xh of x,
    returns A_hat compatible with (xh, yh) within sup-norm 4 * |y - yh|_1.
    """
    _require_same_support(x, xh, "row")
    gap = nash_gap(GSG_ROW, A, x, y)
    if gap > tol:
        raise ValueError(f"input matrix violates the source row conditions (gap {gap:.3g})")
    delta = 2.0 * _l1(y, yh)
    on = x.probs > SUPPORT_TOL
    scores = A.entries @ yh.probs
    entries = _redistribute_rows(A.entries, on, scores, delta)
    return _report(entries, A.entries, 2.0 * delta, SetSpec(SET_GSG_ROW, xh, yh, 0.0))


def exact_gsg_col(B: PayoffMatrix, x: Strategy, y: Strategy, xh: Strategy,
                  yh: Strategy, tol: float = DEFAULT_TOL) -> ConstructionReport:
    """Column-player counterpart of exact_gsg_row; bound 4 * |x - xh|_1."""
    _require_same_support(y, yh, "column")
    gap = nash_gap(GSG_COL, B, x, y)
    if gap > tol:
        raise ValueError(f"input matrix violates the source column conditions (gap {gap:.3g})")
    delta = 2.0 * _l1(x, xh)
    on = y.probs > SUPPORT_TOL
    scores = xh.probs @ B.entries
    entries = _redistribute_rows(B.entries.T, on, scores, delta).T
    return _report(entries, B.entries, 2.0 * delta, SetSpec(SET_GSG_COL, xh, yh, 0.0))


def _require_zero_sum_nash(A, x, y, tol):
    if not is_alpha_nash("zsg", StrategyProfile(x, y), 0.0, A=A, tol=tol):
        raise ValueError("input matrix is not a zero-sum equilibrium of the source profile")


def exact_zsg_fix_x(A: PayoffMatrix, x: Strategy, y: Strategy, yh: Strategy,
                    tol: float = DEFAULT_TOL) -> ConstructionReport:
    """Zero-sum construction moving y to yh while x stays fixed.

    The row redistribution used for general-sum games also preserves the
    column-player conditions here because the supported columns of a zero-sum
    equilibrium all carry the game value; requires supp(y) = supp(yh).
    """
    _require_zero_sum_nash(A, x, y, tol)
    _require_same_support(y, yh, "column")
    delta = 2.0 * _l1(y, yh)
    on = x.probs > SUPPORT_TOL
    scores = A.entries @ yh.probs
    entries = _redistribute_rows(A.entries, on, scores, delta)
    return _report(entries, A.entries, 2.0 * delta, SetSpec(SET_ZSG, x, yh, 0.0))


def exact_zsg_fix_y(A: PayoffMatrix, x: Strategy, y: Strategy, xh: Strategy,
                    tol: float = DEFAULT_TOL) -> ConstructionReport:
    """Zero-sum construction moving x to xh while y stays fixed.

    Columns in supp(y) are shifted up to tie at the best response value under
    xh; columns outside supp(y) are shifted *down* by the full slack so they
    stay dominated.  Requires supp(x) = supp(xh); bound 4 * |x - xh|_1.
    """
    _require_zero_sum_nash(A, x, y, tol)
    _require_same_support(x, xh, "row")
    delta = 2.0 * _l1(x, xh)
    on = y.probs > SUPPORT_TOL
    scores = xh.probs @ A.entries
    top = scores[on].max()
    deficits = top - scores
    if deficits[on].max() > delta + 1e-9:
        raise ValueError("score deficit exceeds the perturbation slack; "
                         "input matrix is not feasible for the source profile")
    shift = np.where(on, np.where(deficits <= _TIE_TOL, 0.0, deficits), -delta)
    entries = (A.entries + shift[None, :]) / (1.0 + delta)
    return _report(entries, A.entries, 2.0 * delta, SetSpec(SET_ZSG, xh, y, 0.0))


def approx_scale(kind: str, M: PayoffMatrix, xp: Strategy, yp: Strategy,
                 alpha: float) -> ConstructionReport:
    """Multiplicative construction for alpha > 0: shrink M until feasible.

    With g the relevant worst gap of M at (xp, yp): if g <= alpha the matrix
    is already feasible and returned unchanged; otherwise (alpha / g) * M is
    feasible exactly, because scaling scales every gap linearly.  The
    certified distance bound is 2 (g - alpha) / g.
    """
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if kind == SET_GSG_ROW:
        g = nash_gap(GSG_ROW, M, xp, yp)
    elif kind == SET_GSG_COL:
        g = nash_gap(GSG_COL, M, xp, yp)
    elif kind == SET_ZSG:
        g = max(nash_gap(GSG_ROW, M, xp, yp), nash_gap(ZSG_COL, M, xp, yp))
    else:
        raise ValueError(f"unknown set kind {kind!r}")
    target = SetSpec(kind, xp, yp, alpha)
    if g <= alpha:
        return _report(M.entries, M.entries, 0.0, target)
    lam = alpha / g
    bound = 2.0 * (g - alpha) / g
    return _report(lam * M.entries, M.entries, bound, target)
