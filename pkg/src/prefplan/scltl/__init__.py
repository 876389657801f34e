"""Syntactically co-safe LTL: parsing, finite-trace semantics, DFA compilation."""
from .automaton import (
    Dfa,
    DfaError,
    Nfa,
    determinize,
    dfa_step,
    dump_dfa,
    formula_to_dfa,
    formula_to_nfa,
    load_dfa,
)
from .semantics import eval_trace, first_sat_prefix, holds
from .syntax import (
    FALSE,
    TRUE,
    And,
    Eventually,
    Formula,
    Next,
    NotProp,
    Or,
    Prop,
    ScltlSyntaxError,
    Until,
    parse_guard,
    parse_scltl,
)

__all__ = [
    "And", "Dfa", "DfaError", "Eventually", "FALSE", "Formula", "Next", "Nfa", "NotProp", "Or",
    "Prop", "ScltlSyntaxError", "TRUE", "Until", "determinize", "dfa_step", "dump_dfa",
    "eval_trace", "first_sat_prefix", "formula_to_dfa", "formula_to_nfa", "holds", "load_dfa",
    "parse_guard", "parse_scltl",
]
