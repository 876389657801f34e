"""Minimum-cost planning for several scLTL tasks under a preference over task completion costs."""
from .model import Trajectory, Wts, apply_plan, load_wts, make_grid_world, successors, total_cost
from .preference import (
    Constant,
    FunctionPreference,
    OutOfOrder,
    Preference,
    WeightedSum,
    check_monotone,
    mu_out_of_order,
    mu_weighted_sum,
    pcs_of_trajectory,
)
from .problem import Problem, ProblemError, load_problem, read_problem, replay
from .product import Product, ProductState
from .scltl import eval_trace, formula_to_dfa, parse_scltl
from .search import (
    InfeasibleTasks,
    ParetoSolution,
    PlanningFailure,
    brute_force_front,
    compute_heuristic,
    constrained_astar,
    dominates,
    h_max_min,
    pareto_front,
)

__version__ = "0.1.0"
