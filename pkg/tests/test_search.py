import random
import time
import warnings

import pytest

from prefplan.generators import random_grid_problem, with_random_costs
from prefplan.model import make_grid_world
from prefplan.preference import Constant, FunctionPreference, OutOfOrder, WeightedSum
from prefplan.product import Product
from prefplan.scltl import formula_to_dfa, parse_scltl
from prefplan.search import (
    InfeasibleTasks,
    PlanningFailure,
    SearchStats,
    SearchTimeout,
    brute_force_front,
    compute_heuristic,
    constrained_astar,
    dominates,
    exhaustive_front,
    h_max_min,
    pareto_front,
    reachable_states,
)
from prefplan.search.oracle import event_skeleton_front


@pytest.fixture
def ex1(ex1_wts, ex1_dfas):
    return Product(ex1_wts, ex1_dfas), compute_heuristic(ex1_wts, ex1_dfas)


def points(front):
    return [(s.cost, s.mu) for s in front]


def test_dominates():
    assert dominates((1, 2), (1, 3))
    assert dominates((1, 2), (2, 2))
    assert not dominates((1, 2), (1, 2))
    assert not dominates((1, 3), (2, 2))


def test_heuristic_on_example1(ex1):
    prod, table = ex1
    p0 = prod.initial_state()
    assert [table.d(j, p0.s, p0.q[j]) for j in range(3)] == [4, 3, 2]
    assert h_max_min(table, p0) == 4
    goal = prod.run(["East", "East", "West", "North", "North", "East"])[-1].target
    assert h_max_min(table, goal) == 0


def test_single_plan_example1(ex1):
    prod, table = ex1
    sol = constrained_astar(prod, table, OutOfOrder())
    assert (sol.cost, sol.mu) == (6, 4)
    assert prod.is_accepting(prod.run(sol.plan)[-1].target)
    assert constrained_astar(prod, table, OutOfOrder(), 3).cost == 9
    with pytest.raises(PlanningFailure):
        constrained_astar(prod, table, OutOfOrder(), 0)


def test_front_example1(ex1):
    prod, table = ex1
    assert points(pareto_front(prod, table, OutOfOrder())) == [(6, 4), (9, 3)]
    assert points(pareto_front(prod, None, OutOfOrder())) == [(6, 4), (9, 3)]
    assert points(pareto_front(prod, table, WeightedSum((1, 1, 2)))) == [(6, 15)]


def test_constant_preference_gives_one_point(ex1):
    prod, table = ex1
    assert points(pareto_front(prod, table, Constant(0))) == [(6, 0)]


def test_unreachable_task(ex1_wts, ex1_dfas):
    dfas = ex1_dfas + [formula_to_dfa(parse_scltl("F nowhere"))]
    prod = Product(ex1_wts, dfas)
    table = compute_heuristic(ex1_wts, dfas)
    with pytest.raises(InfeasibleTasks):
        constrained_astar(prod, table, OutOfOrder())
    assert pareto_front(prod, table, OutOfOrder()) == []
    assert brute_force_front(prod, OutOfOrder(), 30) == []


def test_conflicting_tasks_fail_without_heuristic():
    wts = make_grid_world(2, 1, {(1, 0): ["a"]})
    dfas = [formula_to_dfa(parse_scltl(t)) for t in ("F a", "!a U false")]
    prod = Product(wts, dfas)
    with pytest.raises(PlanningFailure):
        constrained_astar(prod, None, OutOfOrder())


def test_negative_budget_rejected(ex1):
    prod, table = ex1
    with pytest.raises(ValueError):
        constrained_astar(prod, table, OutOfOrder(), -1)


def test_brute_force_bounds(ex1):
    prod, _ = ex1
    assert brute_force_front(prod, OutOfOrder(), 0) == []
    assert brute_force_front(prod, OutOfOrder(), 5) == []
    small = [(p.cost, p.mu) for p in brute_force_front(prod, OutOfOrder(), 12)]
    big = [(p.cost, p.mu) for p in brute_force_front(prod, OutOfOrder(), 16)]
    assert small == big == [(6, 4), (9, 3)]
    assert [(p.cost, p.mu) for p in event_skeleton_front(prod, OutOfOrder())] == small
    assert [(p.cost, p.mu) for p in exhaustive_front(prod, OutOfOrder())] == small


def test_scalar_mode_warns_for_non_additive(ex1):
    prod, table = ex1
    with pytest.warns(UserWarning, match="edge-additive"):
        pareto_front(prod, table, OutOfOrder(), dominance="scalar")
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        pareto_front(prod, table, WeightedSum((1, 1, 2)), dominance="scalar")
    with pytest.raises(ValueError):
        pareto_front(prod, table, OutOfOrder(), dominance="nope")


def test_bare_callable_preference(ex1):
    prod, table = ex1
    mu = FunctionPreference(lambda pcs: max(pcs) - min(pcs))
    front = pareto_front(prod, table, mu, cost_bound=14)
    assert points(front) == [(p.cost, p.mu) for p in brute_force_front(prod, mu, 14)]


def test_cost_bound_truncates_front(ex1):
    prod, table = ex1
    assert points(pareto_front(prod, table, OutOfOrder(), cost_bound=8)) == [(6, 4)]
    assert points(pareto_front(prod, table, OutOfOrder(), cost_bound=5)) == []


def test_timeout(ex1):
    prod, table = ex1
    with pytest.raises(SearchTimeout):
        # unbounded search with a bare callable only stops at the deadline
        pareto_front(prod, table, FunctionPreference(lambda pcs: max(pcs) - min(pcs)),
                     deadline=time.monotonic() + 0.5)


def test_stats_are_filled(ex1):
    prod, table = ex1
    guided, blind = SearchStats(), SearchStats()
    constrained_astar(prod, table, OutOfOrder(), stats=guided)
    constrained_astar(prod, None, OutOfOrder(), stats=blind)
    assert 0 < guided.expanded <= blind.expanded


def test_heuristic_is_consistent_on_random_instances():
    rng = random.Random(7)
    for _ in range(10):
        wts, formulas = random_grid_problem(rng, 4, n_tasks=3, depth=3)
        wts = with_random_costs(rng, wts)
        dfas = [formula_to_dfa(f) for f in formulas]
        prod = Product(wts, dfas)
        table = compute_heuristic(wts, dfas)
        for p in reachable_states(prod):
            for e in prod.successors(p):
                assert h_max_min(table, p) <= e.cost + h_max_min(table, e.target)


def test_searches_agree_with_brute_force_on_random_costs():
    rng = random.Random(21)
    for _ in range(15):
        wts, formulas = random_grid_problem(rng, 4, n_tasks=2, depth=3)
        wts = with_random_costs(rng, wts)
        dfas = [formula_to_dfa(f) for f in formulas]
        prod = Product(wts, dfas)
        table = compute_heuristic(wts, dfas)
        for mu in (OutOfOrder(), WeightedSum((1, 2))):
            front = points(pareto_front(prod, table, mu))
            expected = [(p.cost, p.mu) for p in exhaustive_front(prod, mu)]
            assert front == expected
            for cost, m in front:
                sol = constrained_astar(prod, table, mu, m)
                assert sol.cost == cost and sol.mu <= m
