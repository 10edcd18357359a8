"""Feasible payoff sets of bimatrix games from observed equilibrium play.

The library estimates and analyzes the set of payoff matrices consistent
with observed (approximately) equilibrium behavior: build the feasible sets
as halfspace systems, measure sup-norm Hausdorff distances between them
(exact LP inner step; grid or Monte-Carlo outer step), construct witness
matrices certifying closeness of nearby sets, and evaluate the closed-form
sample-size and minimax-rate formulas that govern how fast the estimated
sets converge.
"""

from .constructions import (ConstructionReport, approx_scale, exact_gsg_col,
                            exact_gsg_row, exact_zsg_fix_x, exact_zsg_fix_y)
from .distance import (HausdorffEstimate, directed_distance_mc, f_alpha,
                       hausdorff_grid_2x2, hausdorff_mc, hausdorff_upper_bound,
                       point_to_set)
from .games import (PayoffMatrix, SampleRecord, Strategy, StrategyProfile,
                    empirical_profile, is_alpha_nash, nash_gap, pi_min,
                    sample_profile, support, support_characterization)
from .instances import (LbInstance, PackingSet, greedy_packing, kl_categorical,
                        make_lb_instance, verify_separation)
from .lp import LpProblem, LpSolution, lp_text, solve_lp
from .rates import (RateParams, empirical_subset_bound, fractional_knapsack_value,
                    knapsack_subset_sup, l1_bound, minimax_lower_bound,
                    missing_mass_bounds, sample_size, subset_bernstein_bound,
                    subset_family_sup, support_id_samples, tech_lemma_bound,
                    tech_lemma_threshold)
from .sets import (HalfspaceSystem, SetSpec, build_system, hit_and_run_sample,
                   interior_point, membership)

__version__ = "0.1.0"

__all__ = [
    "ConstructionReport", "HalfspaceSystem", "HausdorffEstimate", "LbInstance",
    "LpProblem", "LpSolution", "PackingSet", "PayoffMatrix", "RateParams",
    "SampleRecord", "SetSpec", "Strategy", "StrategyProfile", "approx_scale",
    "build_system", "directed_distance_mc", "empirical_profile",
    "empirical_subset_bound", "exact_gsg_col", "exact_gsg_row",
    "exact_zsg_fix_x", "exact_zsg_fix_y", "f_alpha", "fractional_knapsack_value",
    "greedy_packing", "hausdorff_grid_2x2", "hausdorff_mc",
    "hausdorff_upper_bound", "hit_and_run_sample", "interior_point",
    "is_alpha_nash", "kl_categorical", "knapsack_subset_sup", "l1_bound",
    "lp_text", "make_lb_instance", "membership", "minimax_lower_bound",
    "missing_mass_bounds", "nash_gap", "pi_min", "point_to_set",
    "sample_profile", "sample_size", "solve_lp", "subset_bernstein_bound",
    "subset_family_sup", "support", "support_characterization",
    "support_id_samples", "tech_lemma_bound", "tech_lemma_threshold",
    "verify_separation",
]
