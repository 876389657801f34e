from fractions import Fraction

import pytest

from prefplan.model import (
    InvalidPlanError,
    Wts,
    WtsError,
    apply_plan,
    dump_wts,
    load_explicit,
    load_wts,
    make_grid_world,
    successors,
    total_cost,
)
from prefplan.rationals import INF, as_rational, format_rational, parse_bound, to_json_number

from conftest import EXAMPLE3_PLAN


def test_grid_transition_counts():
    assert len(make_grid_world(10, 10).transitions) == 360
    assert len(make_grid_world(3, 3).transitions) == 24


def test_example3_trajectory(ex1_wts):
    traj = apply_plan(ex1_wts, EXAMPLE3_PLAN)
    assert traj.states == ("x0_0", "x1_0", "x2_0", "x1_0", "x1_1", "x1_2", "x2_2")
    assert traj.trace[2] == frozenset({"dirt"})
    assert traj.trace[-1] == frozenset({"charge"})
    assert total_cost(ex1_wts, traj) == 6


def test_empty_plan_stays_at_initial(ex1_wts):
    traj = apply_plan(ex1_wts, [])
    assert traj.states == ("x0_0",) and total_cost(ex1_wts, traj) == 0


def test_invalid_action_reports_step(ex1_wts):
    with pytest.raises(InvalidPlanError) as exc:
        apply_plan(ex1_wts, ["East", "South"])
    assert exc.value.step == 1 and exc.value.state == "x1_0"


def test_successors_in_action_order(ex1_wts):
    succ = successors(ex1_wts, "x0_0")
    assert [s.action for s in succ] == ["East", "North"]
    with pytest.raises(KeyError):
        successors(ex1_wts, "nowhere")


def test_obstacles_remove_cells():
    w = make_grid_world(3, 1, obstacles=[(1, 0)])
    assert "x1_0" not in w.states
    assert successors(w, "x0_0") == []


def test_rational_costs_are_exact():
    w = make_grid_world(2, 1, cost="1/3")
    traj = apply_plan(w, ["East", "West", "East"])
    assert total_cost(w, traj) == 1


def test_negative_cost_rejected():
    doc = {"states": ["a", "b"], "initial": "a", "transitions": [{"from": "a", "action": "go", "to": "b", "cost": -1}]}
    with pytest.raises(WtsError, match="negative cost"):
        load_explicit(doc)


def test_dangling_state_rejected():
    doc = {"states": ["a"], "initial": "a", "transitions": [{"from": "a", "action": "go", "to": "z"}]}
    with pytest.raises(WtsError, match="dangling state"):
        load_explicit(doc)


def test_schema_violations():
    with pytest.raises(WtsError, match="schema violation"):
        load_wts({"grid": {"width": "3", "height": 3}})
    with pytest.raises(WtsError, match="missing"):
        load_wts({})


def test_explicit_round_trip(ex1_wts):
    again = load_explicit(dump_wts(ex1_wts))
    assert again == ex1_wts


def test_fraction_costs_round_trip():
    doc = {"states": ["a", "b"], "initial": "a", "labels": {"b": ["goal"]},
           "transitions": [{"from": "a", "action": "go", "to": "b", "cost": "3/2"},
                           {"from": "b", "action": "back", "to": "a", "cost": 0.25}]}
    w = load_explicit(doc)
    assert w.costs[("a", "go")] == Fraction(3, 2) and w.costs[("b", "back")] == Fraction(1, 4)
    assert load_explicit(dump_wts(w)) == w


def test_rationals():
    assert as_rational("6/3") == 2 and isinstance(as_rational("6/3"), int)
    assert as_rational(0.1) == Fraction(1, 10)
    assert parse_bound("inf") == INF
    assert format_rational(Fraction(7, 2)) == "7/2" and format_rational(INF) == "inf"
    assert to_json_number(Fraction(4, 2)) == 2
    with pytest.raises(TypeError):
        as_rational(True)
    with pytest.raises(ValueError):
        as_rational("abc")
