import random

from prefplan.generators import random_grid_problem
from prefplan.model import apply_plan, successors
from prefplan.preference import pcs_of_trajectory
from prefplan.product import Product, single_product
from prefplan.scltl import formula_to_dfa

from conftest import EXAMPLE3_PLAN


def test_initial_state_observes_first_label(ex1_wts, ex1_dfas):
    prod = Product(ex1_wts, ex1_dfas)
    p0 = prod.initial_state()
    assert prod.acc_mask(p0) == 0 and not prod.is_accepting(p0)


def test_example3_run(ex1_wts, ex1_dfas):
    prod = Product(ex1_wts, ex1_dfas)
    run = prod.run(EXAMPLE3_PLAN)
    assert prod.is_accepting(run[-1].target)
    pcs = tuple(sum(c) for c in zip(*(e.pcs for e in run)))
    assert pcs == (6, 5, 2) == prod.pcs_of_plan(EXAMPLE3_PLAN)
    assert [sorted(prod.acc_set(e.target)) for e in run][:3] == [[], [2], [2]]


def test_transition_pcs_only_charges_open_tasks(ex1_wts, ex1_dfas):
    prod = Product(ex1_wts, ex1_dfas)
    p = prod.run(["East", "East"])[-1].target
    assert prod.transition_pcs(p, 3) == (3, 3, 0)


def test_successors_mirror_wts(ex1_wts, ex1_dfas):
    prod = Product(ex1_wts, ex1_dfas)
    p0 = prod.initial_state()
    assert [e.action for e in prod.successors(p0)] == [s.action for s in successors(ex1_wts, "x0_0")]
    assert [(a, t) for a, t, _ in prod.moves(p0)] == [(e.action, e.target) for e in prod.successors(p0)]


def test_pcs_sum_matches_trajectory_definition():
    rng = random.Random(5)
    for _ in range(50):
        wts, formulas = random_grid_problem(rng, 4, n_tasks=3, depth=3)
        prod = Product(wts, [formula_to_dfa(f) for f in formulas])
        p = prod.initial_state()
        plan = []
        for _ in range(rng.randint(0, 12)):
            edges = prod.successors(p)
            if not edges:
                break
            e = rng.choice(edges)
            plan.append(e.action)
            p = e.target
        traj = apply_plan(wts, plan)
        assert prod.pcs_of_plan(plan) == pcs_of_trajectory(wts, formulas, traj)


def test_state_enumeration_and_single_product(ex1_wts, ex1_dfas):
    prod = single_product(ex1_wts, ex1_dfas[0])
    states = list(prod.states())
    assert len(states) == len(ex1_wts.states) * ex1_dfas[0].num_states
    rev = prod.reverse_edges()
    assert sum(len(v) for v in rev.values()) == sum(len(prod.successors(p)) for p in states)
