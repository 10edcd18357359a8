"""Hard-instance families with certified feasible-set separations.

Each family packages a pair (or packing) of strategy profiles whose feasible
payoff sets are provably at least ``certified_separation`` apart in the
Hausdorff metric, together with the witness matrix realizing the separation:
the witness is feasible for the first profile and provably far from the
second profile's set.  Separations are re-verified numerically with the
exact LP distance.

Families:

* impossibility: pure vs barely-mixed row player, unit separation at alpha=0;
* eps_family:    symmetric coin vs gamma-tilted coin, separation 2*eps;
* n_packing:     uniform column mixtures tilted along balanced sign vectors;
* alpha_log:     alpha-mass row action nudged by beta/2, separation 2*eps;
* alpha_n:       alpha mass spread over n-1 actions, tilted along sign vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .distance import point_to_set
from .games import PayoffMatrix, Strategy, StrategyProfile
from .rng import spawn_generator
from .sets import SET_GSG_COL, SET_GSG_ROW, SetSpec, build_system

IMPOSSIBILITY = "impossibility"
EPS_FAMILY = "eps_family"
N_PACKING = "n_packing"
ALPHA_LOG = "alpha_log"
ALPHA_N = "alpha_n"
FAMILIES = (IMPOSSIBILITY, EPS_FAMILY, N_PACKING, ALPHA_LOG, ALPHA_N)

# which feasible set the witness separation is measured against
_FAMILY_SET_KIND = {
    IMPOSSIBILITY: SET_GSG_ROW,
    EPS_FAMILY: SET_GSG_COL,
    N_PACKING: SET_GSG_ROW,
    ALPHA_LOG: SET_GSG_ROW,
    ALPHA_N: SET_GSG_ROW,
}


@dataclass(frozen=True, eq=False)
class PackingSet:
    """Balanced sign vectors pairwise far apart in l1."""

    D: int
    vectors: np.ndarray  # (count, D) of +-1
    min_pairwise_l1: float

    def __post_init__(self):
        v = np.asarray(self.vectors, dtype=float)
        if v.ndim != 2 or v.shape[1] != self.D:
            raise ValueError("vectors must be (count, D)")
        if np.any(np.abs(v) != 1.0) or np.any(v.sum(axis=1) != 0):
            raise ValueError("vectors must be balanced sign vectors")
        v.setflags(write=False)
        object.__setattr__(self, "vectors", v)

    @property
    def count(self) -> int:
        return self.vectors.shape[0]


@dataclass(frozen=True, eq=False)
class LbInstance:
    family: str
    profiles: tuple[StrategyProfile, ...]
    alpha: float
    certified_separation: float
    witness: PayoffMatrix
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.certified_separation <= 0:
            raise ValueError("certified separation must be positive")

    @property
    def set_kind(self) -> str:
        return _FAMILY_SET_KIND[self.family]


def greedy_packing(D: int, target: int, seed: int, draw_budget: int | None = None) -> PackingSet:
    """Keep random balanced sign vectors pairwise at l1 distance >= D/16.

    Constructive stand-in for the existence guarantee (2^(D/5) such vectors
    exist); raises with the achieved count if the draw budget runs out.
    """
    if D < 4 or D % 2:
        raise ValueError("D must be an even integer >= 4")
    if target < 1:
        raise ValueError("target must be >= 1")
    rng = spawn_generator(seed, 0)
    budget = draw_budget if draw_budget is not None else max(1000, 400 * target)
    base = np.concatenate([np.ones(D // 2), -np.ones(D // 2)])
    threshold = D / 16.0
    kept: list[np.ndarray] = []
    for _ in range(budget):
        v = rng.permutation(base)
        if all(np.abs(v - w).sum() >= threshold for w in kept):
            kept.append(v)
            if len(kept) == target:
                break
    if len(kept) < target:
        raise RuntimeError(f"packing budget exhausted: kept {len(kept)} of {target} vectors")
    vectors = np.asarray(kept)
    pairwise = min(np.abs(vectors[i] - vectors[j]).sum()
                   for i in range(target) for j in range(i + 1, target)) if target > 1 else float(D)
    assert pairwise >= threshold
    return PackingSet(D, vectors, float(pairwise))


def kl_categorical(p: Strategy, q: Strategy) -> float:
    """KL(p, q) in nats with 0 log(0/.) = 0; requires supp(p) within supp(q)."""
    pv, qv = p.probs, q.probs
    on = pv > 1e-12
    if np.any(qv[on] <= 1e-12):
        raise ValueError("absolute continuity violated: supp(p) must lie in supp(q)")
    return float(np.sum(pv[on] * np.log(pv[on] / qv[on])))


def _pair(x0, y0, x1, y1):
    return (StrategyProfile(Strategy(x0), Strategy(y0)),
            StrategyProfile(Strategy(x1), Strategy(y1)))


def _check(cond, message):
    if not cond:
        raise ValueError(message)


def make_lb_instance(family: str, params: dict) -> LbInstance:
    """Build one hard instance; raises naming the violated parameter bound."""
    if family == IMPOSSIBILITY:
        pi = float(params["pi"])
        _check(0 < pi < 1, "impossibility requires pi in (0, 1)")
        profiles = _pair([0.0, 1.0], [1.0, 0.0], [pi, 1.0 - pi], [1.0, 0.0])
        witness = PayoffMatrix([[1.0, 0.0], [-1.0, 0.0]])
        return LbInstance(family, profiles, 0.0, 1.0, witness, {"pi": pi})

    if family == EPS_FAMILY:
        eps = float(params["epsilon"])
        _check(0 < eps < 1.0 / math.sqrt(32.0), "eps_family requires epsilon < 1/sqrt(32)")
        gamma = 2.0 * eps
        profiles = _pair([0.5, 0.5], [0.5, 0.5], [0.5 + gamma, 0.5 - gamma], [0.5, 0.5])
        witness = PayoffMatrix(np.eye(2))
        return LbInstance(family, profiles, 0.0, 2.0 * eps, witness,
                          {"epsilon": eps, "gamma": gamma})

    if family == N_PACKING:
        n = int(params["n"])
        eps = float(params["epsilon"])
        seed = int(params.get("seed", 0))
        _check(0 < eps <= 1.0 / 384.0, "n_packing requires epsilon <= 1/384")
        _check(n >= 4 and n % 2 == 0, "n_packing requires even n >= 4")
        gamma = 192.0 * eps
        packing = greedy_packing(n, int(params.get("count", 2)), seed)
        v, w = packing.vectors[0], packing.vectors[1]
        profiles = tuple(
            StrategyProfile(Strategy(np.eye(n)[0]), Strategy((1.0 + gamma * vec) / n))
            for vec in packing.vectors)
        witness = _packing_witness_cols(v, w, profiles[0].y.probs, gamma)
        return LbInstance(family, profiles, 0.0, 2.0 * eps, witness,
                          {"n": n, "epsilon": eps, "gamma": gamma, "seed": seed,
                           "min_pairwise_l1": packing.min_pairwise_l1,
                           # dimension rules the source theorem states vs. uses
                           "stated_dim_rule": "n >= 20 and n % 16 == 0",
                           "proof_dim_rule": "n >= 16 and n % 16 == 0"})

    if family == ALPHA_LOG:
        alpha = float(params["alpha"])
        eps = float(params["epsilon"])
        _check(0 < alpha < 0.25, "alpha_log requires alpha in (0, 1/4)")
        _check(0 < eps <= 0.125, "alpha_log requires epsilon <= 1/8")
        beta = (8.0 / 3.0) * eps * alpha
        profiles = _pair([alpha / 2.0, 1.0 - alpha / 2.0], [1.0, 0.0],
                         [(alpha + beta) / 2.0, 1.0 - (alpha + beta) / 2.0], [1.0, 0.0])
        witness = PayoffMatrix([[1.0, -1.0], [-1.0, -1.0]])
        return LbInstance(family, profiles, alpha, 2.0 * eps, witness,
                          {"alpha": alpha, "epsilon": eps, "beta": beta})

    if family == ALPHA_N:
        n = int(params["n"])
        alpha = float(params["alpha"])
        eps = float(params["epsilon"])
        seed = int(params.get("seed", 0))
        _check(0 < alpha < 0.5, "alpha_n requires alpha in (0, 1/2)")
        _check(0 < eps <= 1.0 / 128.0, "alpha_n requires epsilon <= 1/128")
        _check(n >= 5 and (n - 1) % 2 == 0, "alpha_n requires odd n >= 5")
        gamma = 128.0 * alpha * eps
        packing = greedy_packing(n - 1, int(params.get("count", 2)), seed)
        v, w = packing.vectors[0], packing.vectors[1]

        def x_of(vec):
            head = (alpha + gamma * vec) / (n - 1)
            return np.concatenate([head, [1.0 - alpha]])

        profiles = tuple(
            StrategyProfile(Strategy(x_of(vec)), Strategy(np.eye(n)[0]))
            for vec in packing.vectors)
        witness = _spread_mass_witness(v, w, profiles[0].x.probs, alpha, gamma, n)
        return LbInstance(family, profiles, alpha, 2.0 * eps, witness,
                          {"n": n, "alpha": alpha, "epsilon": eps, "gamma": gamma,
                           "seed": seed, "min_pairwise_l1": packing.min_pairwise_l1,
                           "stated_dim_rule": "n >= 22 and (n - 1) % 16 == 0"})

    raise ValueError(f"unknown family {family!r}")


def _packing_witness_cols(v, w, y_probs, gamma):
    """Witness for the column-tilted packing family.

    Rows below the first put +1/3 on the columns where v leads w and
    -kappa/3 where w leads v, with kappa the exact mass ratio, so that every
    row matches the first row's value under y^v.
    """
    n = v.size
    d_plus = (v > 0) & (w < 0)
    d_minus = (v < 0) & (w > 0)
    kappa = (1.0 + gamma) / (1.0 - gamma)
    ratio = float(y_probs[d_plus].sum() / y_probs[d_minus].sum())
    assert abs(kappa - ratio) <= 1e-12 * max(1.0, kappa)
    a = np.zeros((n, n))
    a[1:, d_plus] = 1.0 / 3.0
    a[1:, d_minus] = -kappa / 3.0
    return PayoffMatrix(a)


def _spread_mass_witness(v, w, x_probs, alpha, gamma, n):
    """Witness for the row-tilted packing family (mass alpha spread over n-1 rows)."""
    d_plus = (v > 0) & (w < 0)
    d_minus = (v < 0) & (w > 0)
    kappa = (alpha - gamma) / (alpha + gamma)
    ratio = float(x_probs[:-1][d_minus].sum() / x_probs[:-1][d_plus].sum())
    assert abs(kappa - ratio) <= 1e-12 * max(1.0, abs(kappa))
    a = -np.ones((n, n))
    col = np.zeros(n)
    col[:-1][d_plus] = -kappa
    col[:-1][d_minus] = 1.0
    col[-1] = -1.0
    a[:, 0] = col
    return PayoffMatrix(a)


def verify_separation(inst: LbInstance, tol: float = 1e-9):
    """(ok, measured): exact LP distance from the witness to the other profile's set."""
    other = inst.profiles[1]
    system = build_system(SetSpec(inst.set_kind, other.x, other.y, inst.alpha))
    measured = point_to_set(inst.witness.flatten(), system)
    return measured >= inst.certified_separation - tol, measured
