"""Dense small-scale linear programming.

Solves  min c.x  s.t.  A x <= b,  lo <= x <= hi  (all bounds finite) with a
two-phase tableau simplex under Bland's anti-cycling rule.  Problems in this
package are tiny (tens of variables, at most a few hundred rows), so a dense
tableau is simpler and faster to trust than sparse machinery, and Bland's
rule makes every solve deterministic: identical problems produce bitwise
identical solutions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
NUMERIC_FAILURE = "numeric_failure"

_RC_TOL = 1e-9  # reduced-cost tolerance
_PIV_TOL = 1e-11  # smallest usable pivot element


@dataclass(frozen=True)
class LpProblem:
    """min objective.x subject to rows (coeffs, upper bound) and box bounds."""

    objective: np.ndarray
    row_coeffs: np.ndarray  # (k, n), may be empty
    row_bounds: np.ndarray  # (k,)
    var_lo: np.ndarray
    var_hi: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.objective, dtype=float)
        a = np.asarray(self.row_coeffs, dtype=float)
        if a.size == 0:
            a = a.reshape(0, c.size)
        b = np.asarray(self.row_bounds, dtype=float).reshape(-1)
        lo = np.asarray(self.var_lo, dtype=float)
        hi = np.asarray(self.var_hi, dtype=float)
        n = c.size
        if a.shape != (b.size, n) or lo.size != n or hi.size != n:
            raise ValueError("inconsistent LP dimensions")
        if not (np.all(np.isfinite(c)) and np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise ValueError("LP data must be finite")
        if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi))):
            raise ValueError("variable bounds must be finite")
        for name, arr in (("objective", c), ("row_coeffs", a), ("row_bounds", b),
                          ("var_lo", lo), ("var_hi", hi)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def n_vars(self):
        return self.objective.size

    @property
    def n_rows(self):
        return self.row_bounds.size


@dataclass(frozen=True)
class LpSolution:
    status: str
    point: np.ndarray | None
    value: float
    max_violation: float


def max_violation(problem: LpProblem, x) -> float:
    """Largest amount by which x breaks any row or box constraint."""
    x = np.asarray(x, dtype=float)
    viol = [np.max(problem.var_lo - x), np.max(x - problem.var_hi)]
    if problem.n_rows:
        viol.append(np.max(problem.row_coeffs @ x - problem.row_bounds))
    return float(max(viol))


def _bland_entering(cost_row, limit):
    idx = np.nonzero(cost_row[:limit] < -_RC_TOL)[0]
    return int(idx[0]) if idx.size else -1


def _bland_leaving(tableau, col, basis):
    column = tableau[:-1, col]
    rhs = tableau[:-1, -1]
    rows = np.nonzero(column > _PIV_TOL)[0]
    if rows.size == 0:
        return -1
    ratios = rhs[rows] / column[rows]
    best = np.min(ratios)
    tied = rows[ratios <= best + 1e-12]
    # Bland: break ratio ties on the smallest basis label
    return int(tied[np.argmin([basis[r] for r in tied])])


def _pivot(tableau, row, col):
    tableau[row] /= tableau[row, col]
    factors = tableau[:, col].copy()
    factors[row] = 0.0
    tableau -= np.outer(factors, tableau[row])
    tableau[:, col] = 0.0
    tableau[row, col] = 1.0


def _run_simplex(tableau, basis, n_cols, max_iter):
    """Pivot until no negative reduced cost among the first n_cols columns."""
    for _ in range(max_iter):
        col = _bland_entering(tableau[-1], n_cols)
        if col < 0:
            return True
        row = _bland_leaving(tableau, col, basis)
        if row < 0:
            return False  # unbounded: impossible for box-bounded inputs
        _pivot(tableau, row, col)
        basis[row] = col
    return False


def solve_lp(problem: LpProblem) -> LpSolution:
    """Two-phase simplex; statuses instead of exceptions for well-posed inputs."""
    n = problem.n_vars
    lo, hi = problem.var_lo, problem.var_hi
    span = hi - lo
    if np.any(span < -1e-12):
        return LpSolution(INFEASIBLE, None, np.nan, np.inf)
    span = np.maximum(span, 0.0)

    # shift x = lo + s with 0 <= s <= span; append the upper bounds as rows
    a_rows = problem.row_coeffs
    b_rows = problem.row_bounds - (a_rows @ lo if problem.n_rows else np.zeros(0))
    a_all = np.vstack([a_rows, np.eye(n)]) if problem.n_rows else np.eye(n)
    b_all = np.concatenate([b_rows, span])
    m = b_all.size

    neg = b_all < 0
    a_std = np.where(neg[:, None], -a_all, a_all)
    b_std = np.where(neg, -b_all, b_all)
    slack_sign = np.where(neg, -1.0, 1.0)

    art_rows = np.nonzero(neg)[0]
    n_art = art_rows.size
    n_real = n + m  # structural + slack columns
    n_cols = n_real + n_art

    tableau = np.zeros((m + 1, n_cols + 1))
    tableau[:-1, :n] = a_std
    tableau[:-1, n:n_real] = np.diag(slack_sign)
    tableau[:-1, -1] = b_std
    basis = np.empty(m, dtype=int)
    basis[~neg] = n + np.nonzero(~neg)[0]
    for k, r in enumerate(art_rows):
        tableau[r, n_real + k] = 1.0
        basis[r] = n_real + k

    max_iter = 200 + 50 * (m + n_cols)

    if n_art:
        tableau[-1, n_real:n_cols] = 1.0
        for r in art_rows:
            tableau[-1] -= tableau[r]
        if not _run_simplex(tableau, basis, n_cols, max_iter):
            return LpSolution(NUMERIC_FAILURE, None, np.nan, np.inf)
        if -tableau[-1, -1] > 1e-7:
            return LpSolution(INFEASIBLE, None, np.nan, np.inf)
        # drive any residual zero-valued artificials out of the basis
        for r in range(m):
            if basis[r] >= n_real:
                cols = np.nonzero(np.abs(tableau[r, :n_real]) > 1e-9)[0]
                if cols.size:
                    _pivot(tableau, r, int(cols[0]))
                    basis[r] = int(cols[0])
        keep = basis < n_real
        if not np.all(keep):  # redundant rows left with artificial basis at zero
            tableau = tableau[np.concatenate([keep, [True]])]
            basis = basis[keep]
            m = basis.size

    # phase 2 with the real objective on the shifted variables
    cost = np.zeros(n_cols + 1)
    cost[:n] = problem.objective
    tableau[-1] = cost
    tableau[-1, n_real:n_cols] = 1e18  # artificial columns must never re-enter
    for r in range(m):
        if tableau[-1, basis[r]] != 0.0:
            tableau[-1] -= tableau[-1, basis[r]] * tableau[r]
    if not _run_simplex(tableau, basis, n_real, max_iter):
        return LpSolution(NUMERIC_FAILURE, None, np.nan, np.inf)

    s = np.zeros(n_cols)
    s[basis] = tableau[:-1, -1]
    x = lo + s[:n]
    value = float(problem.objective @ x)
    return LpSolution(OPTIMAL, x, value, max_violation(problem, x))


def lp_text(problem: LpProblem, name: str = "problem") -> str:
    """Fixed-format LP text rendering for cross-validation with external solvers."""

    def term(coef, j):
        return f"{'+' if coef >= 0 else '-'} {abs(coef):.17g} x{j + 1}"

    lines = [f"\\ {name}", "Minimize", " obj: " + " ".join(
        term(c, j) for j, c in enumerate(problem.objective))]
    lines.append("Subject To")
    for r in range(problem.n_rows):
        body = " ".join(term(c, j) for j, c in enumerate(problem.row_coeffs[r]))
        lines.append(f" c{r + 1}: {body} <= {problem.row_bounds[r]:.17g}")
    lines.append("Bounds")
    for j in range(problem.n_vars):
        lines.append(f" {problem.var_lo[j]:.17g} <= x{j + 1} <= {problem.var_hi[j]:.17g}")
    lines.append("End")
    return "\n".join(lines) + "\n"
