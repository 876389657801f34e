from .astar import constrained_astar
from .common import (
    InfeasibleTasks,
    ParetoSolution,
    PlanningFailure,
    SearchNode,
    SearchStats,
    SearchTimeout,
    dominates,
)
from .heuristic import HeuristicTable, compute_heuristic, h_max_min, single_task_distances
from .labels import DOMINANCE_MODES
from .oracle import (
    FrontPoint,
    accepting_reachable,
    brute_force_front,
    exact_cost_to_go,
    exhaustive_front,
    front_is_complete,
    reachable_states,
)
from .pareto import pareto_front

__all__ = [
    "DOMINANCE_MODES", "FrontPoint", "HeuristicTable", "InfeasibleTasks", "ParetoSolution",
    "PlanningFailure", "SearchNode", "SearchStats", "SearchTimeout", "accepting_reachable",
    "brute_force_front", "compute_heuristic", "constrained_astar", "dominates", "exact_cost_to_go",
    "exhaustive_front", "front_is_complete", "h_max_min", "pareto_front", "reachable_states",
    "single_task_distances",
]
