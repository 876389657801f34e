import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prefplan.generators import random_formula, random_trace
from prefplan.scltl import (
    FALSE,
    TRUE,
    And,
    DfaError,
    Eventually,
    NotProp,
    Prop,
    ScltlSyntaxError,
    Until,
    dump_dfa,
    eval_trace,
    first_sat_prefix,
    formula_to_dfa,
    holds,
    load_dfa,
    parse_guard,
    parse_scltl,
)
from prefplan.scltl.automaton import accepts_batch
from prefplan.scltl.semantics import all_traces, eval_all_traces, holds_batch

from conftest import EXAMPLE3_PLAN


def test_parse_basic_forms():
    assert parse_scltl("F charge") == Until(TRUE, Prop("charge"))
    assert parse_scltl("!plant U dirt") == Until(NotProp("plant"), Prop("dirt"))
    assert parse_scltl("F (plant & F rock)") == Eventually(And(Prop("plant"), Eventually(Prop("rock"))))
    assert parse_scltl("a && b || c") == parse_scltl("(a & b) | c")
    assert parse_scltl("a U b U c") == Until(Prop("a"), Until(Prop("b"), Prop("c")))
    assert parse_scltl("!true") == FALSE


@pytest.mark.parametrize("text, fragment", [
    ("!(F a)", "negation is only allowed on atomic propositions"),
    ("G a", "not part of co-safe LTL"),
    ("a &", "unexpected end"),
    ("(a", "expected ')'"),
    ("a $ b", "unexpected character"),
    ("U a", "needs a left operand"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(ScltlSyntaxError, match=fragment.replace("(", r"\(").replace(")", r"\)")):
        parse_scltl(text)


def test_guard_parser_allows_general_negation():
    assert parse_guard("!(a & b)") == parse_guard("!a | !b")
    with pytest.raises(ScltlSyntaxError):
        parse_guard("F a")


def test_first_satisfaction_on_example3(ex1_wts, ex1_formulas):
    from prefplan.model import apply_plan

    trace = apply_plan(ex1_wts, EXAMPLE3_PLAN).trace
    assert [first_sat_prefix(f, trace) for f in ex1_formulas] == [6, 5, 2]


def test_end_of_trace_conventions():
    assert holds(TRUE, [])
    assert not holds(Prop("a"), [])
    assert not holds(NotProp("a"), [])
    assert not eval_trace(parse_scltl("X true"), [frozenset()]) is False
    assert not eval_trace(parse_scltl("X a"), [frozenset({"a"})])


def test_dfa_sizes():
    sizes = {
        "F charge": 2, "!plant U dirt": 3, "F (plant & F rock)": 3, "true": 1,
        "F(a & F(b) & F(c))": 5, "!pizza U cheese": 3, "F grocer & F p2": 4,
        "F (tacos & F p3 & F p4)": 5, "F(cheese & F tacos & F grocer & F pizza)": 9,
    }
    for text, n in sizes.items():
        assert formula_to_dfa(parse_scltl(text)).num_states == n, text


def test_accepting_states_absorb():
    rng = random.Random(3)
    for _ in range(100):
        d = formula_to_dfa(random_formula(rng, ("a", "b"), 4))
        for q in d.accepting:
            assert set(d.table[q]) == {q}


def test_dfa_round_trip_through_guards():
    d = formula_to_dfa(parse_scltl("!plant U dirt"))
    again = load_dfa(dump_dfa(d))
    traces = all_traces(2, 4)
    assert (accepts_batch(d, traces, d.atoms) == accepts_batch(again, traces, d.atoms)).all()


def test_load_dfa_rejects_nondeterminism():
    doc = {"states": ["q0", "q1"], "initial": "q0", "accepting": ["q1"],
           "transitions": [{"from": "q0", "guard": "a", "to": "q1"}, {"from": "q0", "guard": "true", "to": "q0"},
                           {"from": "q1", "guard": "true", "to": "q1"}]}
    with pytest.raises(DfaError, match="determin"):
        load_dfa(doc)


def test_load_dfa_rejects_partial_and_leaving_accept():
    partial = {"states": ["q0", "q1"], "initial": "q0", "accepting": ["q1"],
               "transitions": [{"from": "q0", "guard": "a", "to": "q1"}, {"from": "q1", "guard": "true", "to": "q1"}]}
    with pytest.raises(DfaError):
        load_dfa(partial)
    leaving = {"states": ["q0", "q1"], "initial": "q0", "accepting": ["q1"],
               "transitions": [{"from": "q0", "guard": "a", "to": "q1"}, {"from": "q0", "guard": "!a", "to": "q0"},
                               {"from": "q1", "guard": "true", "to": "q0"}]}
    with pytest.raises(DfaError):
        load_dfa(leaving)


def test_batch_evaluator_matches_scalar():
    rng = random.Random(11)
    atoms = ("a", "b")
    for _ in range(40):
        f = random_formula(rng, atoms, 3)
        table = eval_all_traces(f, atoms, 3)
        for n in range(4):
            rows = all_traces(2, n)
            for r in rng.sample(range(len(rows)), min(8, len(rows))):
                trace = [frozenset(a for k, a in enumerate(atoms) if sym >> k & 1) for sym in rows[r]]
                assert bool(table[n][r]) == eval_trace(f, trace)
                assert bool(holds_batch(f, atoms, rows[r:r + 1])[0]) == holds(f, trace)


ATOMS = ("a", "b", "c")


@st.composite
def formulas(draw, depth=4):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_formula(random.Random(seed), ATOMS, draw(st.integers(0, depth)))


traces = st.lists(st.frozensets(st.sampled_from(ATOMS)), max_size=8)


@settings(max_examples=300, deadline=None)
@given(formulas(), traces)
def test_dfa_agrees_with_semantics(f, trace):
    assert formula_to_dfa(f).accepts(trace) == eval_trace(f, trace)


@settings(max_examples=200, deadline=None)
@given(formulas(), traces)
def test_satisfaction_is_monotone_under_extension(f, trace):
    k = first_sat_prefix(f, trace)
    if k is not None:
        assert all(holds(f, trace[:j + 1]) for j in range(k, len(trace)))
        assert not any(holds(f, trace[:j + 1]) for j in range(k))


@settings(max_examples=200, deadline=None)
@given(formulas())
def test_printing_round_trips(f):
    assert parse_scltl(str(f)) == f


def test_random_traces_are_reproducible():
    assert random_trace(random.Random(1), ATOMS, 5) == random_trace(random.Random(1), ATOMS, 5)
