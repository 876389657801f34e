from fractions import Fraction

import pytest

from prefplan.model import apply_plan
from prefplan.preference import (
    Constant,
    FunctionPreference,
    OutOfOrder,
    PreferenceError,
    WeightedSum,
    check_monotone,
    load_preference,
    mu_out_of_order,
    mu_weighted_sum,
    pcs_of_trajectory,
)
from prefplan.product import Product

from conftest import EXAMPLE3_PLAN


@pytest.mark.parametrize("pcs, expected", [
    ((20, 5, 10), 15),
    ((3, 1, 2), 2),
    ((6, 5, 2), 4),
    ((1, 2, 3), 0),
    ((5, 10, 1), 9),
    ((5, 10, 10), 0),
    ((), 0),
])
def test_out_of_order_values(pcs, expected):
    assert mu_out_of_order(pcs) == expected


def test_out_of_order_respects_order():
    assert mu_out_of_order((1, 2, 3), order=(2, 1, 0)) == 2
    assert OutOfOrder((2, 1, 0))((3, 2, 1)) == 0


def test_weighted_sum():
    assert mu_weighted_sum((6, 5, 2), (1, 1, 2)) == 15
    assert WeightedSum((Fraction(1, 2), 1))((3, 1)) == Fraction(5, 2)
    with pytest.raises(ValueError):
        WeightedSum((1, -1))


def test_constant():
    assert Constant(0)((9, 9)) == 0


def test_example3_pcs(ex1_wts, ex1_formulas, ex1_dfas):
    traj = apply_plan(ex1_wts, EXAMPLE3_PLAN)
    assert pcs_of_trajectory(ex1_wts, ex1_formulas, traj) == (6, 5, 2)
    assert pcs_of_trajectory(ex1_wts, ex1_dfas, traj) == (6, 5, 2)


def test_unsatisfied_task_gets_full_cost(ex1_wts, ex1_formulas):
    traj = apply_plan(ex1_wts, ["North"])
    assert pcs_of_trajectory(ex1_wts, ex1_formulas, traj) == (1, 1, 1)


def test_out_of_order_dominance_key_ignores_open_tasks():
    mu = OutOfOrder()
    # tasks 0 and 2 finished, task 1 still open
    assert mu.dominance_key(0b101, (4, 9, 2)) == mu.dominance_key(0b101, (4, 7, 2))
    assert mu.dominance_key(0b101, (4, 9, 2)) != mu.dominance_key(0b101, (3, 9, 2))


def test_componentwise_smaller_pcs_can_have_larger_mu():
    # the reason componentwise (g, PCS) pruning is not used
    z, y = (5, 10, 1), (5, 10, 10)
    assert all(a <= b for a, b in zip(z, y))
    assert mu_out_of_order(z) > mu_out_of_order(y)
    mu = OutOfOrder()
    assert mu.dominance_key(0b111, z) != mu.dominance_key(0b111, y)


def test_flags():
    assert WeightedSum((1, 1)).edge_additive and not OutOfOrder().edge_additive
    assert OutOfOrder().rewards_early_completion
    assert not FunctionPreference(sum).rewards_early_completion


def test_load_preference():
    assert load_preference({"kind": "out_of_order", "order": [1, 0]}, 2) == OutOfOrder((1, 0))
    assert load_preference({"kind": "weighted_sum", "weights": [1, "1/2"]}, 2) == WeightedSum((1, Fraction(1, 2)))
    assert load_preference({"kind": "constant"}, 3)((1, 2, 3)) == 0
    for doc, fragment in [
        ({"kind": "out_of_order", "order": [0, 0]}, "permutation"),
        ({"kind": "weighted_sum", "weights": [1]}, "expected 2 weights"),
        ({"kind": "bogus"}, "unknown preference"),
        ({}, "kind"),
    ]:
        with pytest.raises(PreferenceError, match=fragment):
            load_preference(doc, 2)


def test_monotone_harness(ex1_wts, ex1_dfas):
    prod = Product(ex1_wts, ex1_dfas)
    assert check_monotone(OutOfOrder(), prod, trials=200).ok
    bad = check_monotone(lambda pcs: max(0, 100 - sum(pcs)), prod, trials=50)
    assert not bad.ok and bad.counterexample["mu_after"] < bad.counterexample["mu_before"]
