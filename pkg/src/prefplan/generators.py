"""Seeded random instances: formulas, small grid problems, benchmark problems."""
from __future__ import annotations

import random
from typing import Sequence

from .model import Wts, make_grid_world
from .scltl.syntax import FALSE, TRUE, And, Formula, Next, NotProp, Or, Prop, Until, parse_scltl


def random_formula(rng: random.Random, atoms: Sequence[str], depth: int) -> Formula:
    """Random scLTL formula of nesting depth at most ``depth`` over ``atoms``."""
    if depth <= 0 or rng.random() < 0.25:
        r = rng.random()
        if r < 0.05:
            return TRUE
        if r < 0.08:
            return FALSE
        a = rng.choice(atoms)
        return NotProp(a) if r < 0.35 else Prop(a)
    kind = rng.choice(("and", "or", "next", "until", "eventually", "eventually"))
    if kind == "next":
        return Next(random_formula(rng, atoms, depth - 1))
    if kind == "eventually":
        return Until(TRUE, random_formula(rng, atoms, depth - 1))
    left = random_formula(rng, atoms, depth - 1)
    right = random_formula(rng, atoms, depth - 1)
    return {"and": And, "or": Or, "until": Until}[kind](left, right)


def random_trace(rng: random.Random, atoms: Sequence[str], length: int) -> list[frozenset[str]]:
    return [frozenset(a for a in atoms if rng.random() < 0.4) for _ in range(length)]


def random_grid_problem(rng: random.Random, size: int = 4, n_tasks: int = 2, depth: int = 3,
                        atoms: Sequence[str] = ("a", "b", "c"), cost_choices: Sequence[int] = (1,),
                        satisfiable: bool = True):
    """Small grid with each atom on one or two random cells and random tasks over the atoms.

    Returns ``(wts, formulas)``.  Tasks whose formula is trivially ``true`` or
    ``false`` are resampled so the instance is not degenerate, and with
    ``satisfiable`` so are tasks that no path on the grid can satisfy on its own.
    """
    cells = [(i, j) for i in range(size) for j in range(size)]
    labels: dict[tuple[int, int], set[str]] = {}
    for a in atoms:
        for cell in rng.sample(cells, rng.choice((1, 2))):
            labels.setdefault(cell, set()).add(a)
    wts = make_grid_world(size, size, labels, rng.choice(cost_choices), atomic_props=atoms)
    formulas = []
    while len(formulas) < n_tasks:
        f = random_formula(rng, atoms, depth)
        if f not in (TRUE, FALSE) and f.atoms() and (not satisfiable or _satisfiable_on(wts, f)):
            formulas.append(f)
    return wts, formulas


def _satisfiable_on(wts: Wts, f: Formula) -> bool:
    from .product import single_product
    from .scltl import formula_to_dfa

    prod = single_product(wts, formula_to_dfa(f))
    seen = {prod.initial_state()}
    stack = list(seen)
    while stack:
        p = stack.pop()
        if prod.is_accepting(p):
            return True
        for e in prod.successors(p):
            if e.target not in seen:
                seen.add(e.target)
                stack.append(e.target)
    return False


def with_random_costs(rng: random.Random, wts: Wts, choices: Sequence[int] = (1, 2, 3, 5)) -> Wts:
    """Copy of ``wts`` with every transition cost drawn from ``choices``."""
    costs = {key: rng.choice(choices) for key in sorted(wts.costs)}
    return Wts(wts.states, wts.initial, wts.transitions, costs, wts.labels, wts.atomic_props)


BENCH_TEMPLATE = "F({a} & F({b}) & F({c}))"


def bench_problem(rng: random.Random, size: int, n_tasks: int, template: str = BENCH_TEMPLATE):
    """Benchmark grid: each task visits three random cells in order a, then b and c.

    Returns ``(wts, formulas)`` with task ``i`` using propositions ``t{i}a``,
    ``t{i}b``, ``t{i}c``.
    """
    cells = [(i, j) for i in range(size) for j in range(size)]
    labels: dict[tuple[int, int], set[str]] = {}
    formulas = []
    for t in range(n_tasks):
        names = {k: f"t{t}{k}" for k in "abc"}
        for k, cell in zip("abc", rng.sample(cells, 3)):
            labels.setdefault(cell, set()).add(names[k])
        formulas.append(parse_scltl(template.format(**names)))
    return make_grid_world(size, size, labels, 1), formulas
