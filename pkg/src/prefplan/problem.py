"""Problem files: a world, two or more tasks, a preference and optional search settings.

A problem is a JSON object::

    {
      "grid": {"width": 3, "height": 3, "labels": {"2,2": ["charge"]}},
      "tasks": ["F charge", "F (plant & F rock)", {"dfa": {...}}],
      "preference": {"kind": "out_of_order", "order": [0, 1, 2]},
      "mu_max": "inf",
      "options": {"heuristic": true, "dominance": "sound"}
    }

``wts`` may replace ``grid`` for an explicit transition system.  Task
indices in ``order`` are 0-based.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping, Sequence

from .model import InvalidPlanError, Trajectory, Wts, WtsError, apply_plan, dump_wts, load_wts, total_cost
from .preference import Preference, PreferenceError, load_preference, pcs_of_trajectory
from .product import Product
from .rationals import INF, Cost, parse_bound, to_json_number
from .scltl import Dfa, DfaError, Formula, ScltlSyntaxError, dump_dfa, eval_trace, formula_to_dfa, load_dfa, parse_scltl
from .search.labels import DOMINANCE_MODES


class ProblemError(ValueError):
    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}" if path else message)


@dataclass(frozen=True)
class Task:
    dfa: Dfa
    formula: Formula | None = None
    source: Any = None

    @property
    def name(self) -> str:
        if isinstance(self.source, str):
            return self.source
        return str(self.formula) if self.formula is not None else f"dfa({self.dfa.num_states} states)"

    @property
    def checker(self) -> Formula | Dfa:
        """What replay checks a trace against: the formula when there is one."""
        return self.formula if self.formula is not None else self.dfa


@dataclass
class Problem:
    wts: Wts
    tasks: list[Task]
    preference: Preference
    mu_max: Cost | float = INF
    options: dict = field(default_factory=dict)
    grid: dict | None = None  # the grid section as given, kept for rendering

    @property
    def n_tasks(self) -> int:
        return len(self.tasks)

    @property
    def dfas(self) -> list[Dfa]:
        return [t.dfa for t in self.tasks]

    def product(self) -> Product:
        return Product(self.wts, self.dfas)


_OPTION_KEYS = {"heuristic", "dominance", "seed"}


def _load_task(raw, path: str) -> Task:
    if isinstance(raw, str):
        try:
            f = parse_scltl(raw)
        except ScltlSyntaxError as exc:
            raise ProblemError(path, str(exc)) from None
        return Task(formula_to_dfa(f), f, raw)
    if isinstance(raw, Mapping) and set(raw) == {"formula"} and isinstance(raw["formula"], str):
        return _load_task(raw["formula"], f"{path}.formula")
    if isinstance(raw, Mapping) and set(raw) == {"dfa"}:
        try:
            return Task(load_dfa(raw["dfa"], f"{path}.dfa"), None, raw)
        except (DfaError, ScltlSyntaxError) as exc:
            raise ProblemError("", str(exc)) from None
    raise ProblemError(path, "schema violation: expected a formula string, {\"formula\": ...} or {\"dfa\": ...}")


def load_problem(doc: Mapping) -> Problem:
    if not isinstance(doc, Mapping):
        raise ProblemError("", "schema violation: expected an object")
    unknown = set(doc) - {"grid", "wts", "tasks", "preference", "mu_max", "options"}
    if unknown:
        raise ProblemError("", f"schema violation: unknown keys {sorted(unknown)}")
    try:
        wts = load_wts(doc)
    except WtsError as exc:
        raise ProblemError(exc.path, exc.message) from None

    raw_tasks = doc.get("tasks")
    if not isinstance(raw_tasks, list):
        raise ProblemError("tasks", "schema violation: expected a list")
    if len(raw_tasks) < 2:
        raise ProblemError("tasks", f"N > 1 required, got {len(raw_tasks)} task(s)")
    tasks = [_load_task(t, f"tasks[{n}]") for n, t in enumerate(raw_tasks)]
    for n, t in enumerate(tasks):
        props = t.formula.atoms() if t.formula is not None else frozenset(t.dfa.atoms)
        missing = sorted(props - wts.atomic_props)
        if missing:
            raise ProblemError(f"tasks[{n}]", f"propositions not in the model alphabet: {', '.join(missing)}")

    try:
        pref = load_preference(doc.get("preference", {"kind": "out_of_order"}), len(tasks))
    except (PreferenceError, TypeError, ValueError) as exc:
        raise ProblemError("preference", str(exc)) from None

    try:
        mu_max = parse_bound(doc.get("mu_max", "inf"))
    except (TypeError, ValueError) as exc:
        raise ProblemError("mu_max", str(exc)) from None
    if mu_max < 0:
        raise ProblemError("mu_max", "must be non-negative")

    options = doc.get("options", {})
    if not isinstance(options, Mapping) or set(options) - _OPTION_KEYS:
        raise ProblemError("options", f"schema violation: allowed keys are {sorted(_OPTION_KEYS)}")
    if not isinstance(options.get("heuristic", True), bool):
        raise ProblemError("options.heuristic", "schema violation: expected true or false")
    if options.get("dominance", "sound") not in DOMINANCE_MODES:
        raise ProblemError("options.dominance", f"expected one of {list(DOMINANCE_MODES)}")
    seed = options.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
        raise ProblemError("options.seed", "expected a non-negative integer")

    grid = dict(doc["grid"]) if "grid" in doc else None
    return Problem(wts, tasks, pref, mu_max, dict(options), grid)


def read_problem(path: str | Path) -> Problem:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ProblemError("", f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemError("", f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None
    return load_problem(doc)


def dump_problem(problem: Problem) -> dict:
    doc: dict = {}
    if problem.grid is not None:
        doc["grid"] = problem.grid
    else:
        doc["wts"] = dump_wts(problem.wts)
    doc["tasks"] = [t.source if t.formula is not None else {"dfa": dump_dfa(t.dfa)} for t in problem.tasks]
    doc["preference"] = problem.preference.to_json()
    doc["mu_max"] = to_json_number(problem.mu_max)
    if problem.options:
        doc["options"] = dict(problem.options)
    return doc


@dataclass(frozen=True)
class Replay:
    trajectory: Trajectory
    cost: Cost
    pcs: tuple[Cost, ...]
    mu: Cost
    satisfied: tuple[bool, ...]

    @property
    def all_satisfied(self) -> bool:
        return all(self.satisfied)


def replay(problem: Problem, plan: Sequence[str]) -> Replay:
    """Execute ``plan`` on the world and recompute everything from the trace alone.

    Raises :class:`InvalidPlanError` when an action is not enabled.
    """
    traj = apply_plan(problem.wts, plan)
    checkers = [t.checker for t in problem.tasks]
    pcs = pcs_of_trajectory(problem.wts, checkers, traj)
    satisfied = []
    for t in problem.tasks:
        ok = t.dfa.accepts(traj.trace)
        if t.formula is not None:
            ok = ok and eval_trace(t.formula, traj.trace)
        satisfied.append(ok)
    return Replay(traj, total_cost(problem.wts, traj), pcs, problem.preference(pcs), tuple(satisfied))


def check_reported(problem: Problem, plan: Sequence[str], cost, mu, pcs=None) -> list[str]:
    """Differences between a reported result and its replay; empty when they agree."""
    try:
        r = replay(problem, plan)
    except InvalidPlanError as exc:
        return [str(exc)]
    issues = []
    if not r.all_satisfied:
        bad = [problem.tasks[i].name for i, ok in enumerate(r.satisfied) if not ok]
        issues.append(f"tasks not satisfied: {', '.join(bad)}")
    if r.cost != cost:
        issues.append(f"cost {cost} reported, replay gives {r.cost}")
    if r.mu != mu:
        issues.append(f"mu {mu} reported, replay gives {r.mu}")
    if pcs is not None and tuple(r.pcs) != tuple(pcs):
        issues.append(f"pcs {tuple(pcs)} reported, replay gives {r.pcs}")
    return issues
