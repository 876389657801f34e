"""Weighted transition systems: the robot/environment abstraction.

A :class:`Wts` is immutable once built.  String identifiers are interned to
dense integers (``Wts.index``) so the search layers can work on ints while
plans and trajectories stay readable.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple, Sequence

from .rationals import Cost, as_rational, to_json_number

GRID_ACTIONS = {
    "North": (0, 1),
    "South": (0, -1),
    "East": (1, 0),
    "West": (-1, 0),
}


class WtsError(ValueError):
    """Malformed model document or violated model invariant.

    ``path`` points at the offending key, e.g. ``wts.transitions[3].cost``.
    """

    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}" if path else message)


class InvalidPlanError(ValueError):
    def __init__(self, step: int, state: str, action: str):
        self.step = step
        self.state = state
        self.action = action
        super().__init__(f"plan invalid at step {step}: no action {action!r} from state {state!r}")


class Successor(NamedTuple):
    action: str
    state: str
    cost: Cost


@dataclass(frozen=True)
class Trajectory:
    """States visited by a plan, starting at the initial state, plus its observations."""

    states: tuple[str, ...]
    plan: tuple[str, ...]
    trace: tuple[frozenset[str], ...]

    def __len__(self) -> int:
        return len(self.plan)


@dataclass(frozen=True, eq=False)
class Wts:
    states: tuple[str, ...]
    initial: str
    transitions: Mapping[tuple[str, str], str]
    costs: Mapping[tuple[str, str], Cost]
    labels: Mapping[str, frozenset[str]]
    atomic_props: frozenset[str]

    # derived, integer-indexed views
    index: Mapping[str, int] = field(init=False, repr=False)
    label_sets: tuple[frozenset[str], ...] = field(init=False, repr=False)
    out_edges: tuple[tuple[tuple[str, int, Cost], ...], ...] = field(init=False, repr=False)

    def __post_init__(self):
        _validate(self)
        index = {s: i for i, s in enumerate(self.states)}
        out: list[list[tuple[str, int, Cost]]] = [[] for _ in self.states]
        for (s, a), t in self.transitions.items():
            out[index[s]].append((a, index[t], self.costs[(s, a)]))
        for edges in out:
            edges.sort(key=lambda e: e[0])
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "label_sets", tuple(self.labels.get(s, frozenset()) for s in self.states))
        object.__setattr__(self, "out_edges", tuple(tuple(e) for e in out))

    @property
    def actions(self) -> frozenset[str]:
        return frozenset(a for _, a in self.transitions)

    @property
    def initial_index(self) -> int:
        return self.index[self.initial]

    def label(self, state: str) -> frozenset[str]:
        return self.labels.get(state, frozenset())

    def __len__(self) -> int:
        return len(self.states)

    def __eq__(self, other):
        if not isinstance(other, Wts):
            return NotImplemented
        return (
            set(self.states) == set(other.states)
            and self.initial == other.initial
            and dict(self.transitions) == dict(other.transitions)
            and dict(self.costs) == dict(other.costs)
            and {s: self.label(s) for s in self.states} == {s: other.label(s) for s in other.states}
            and self.atomic_props == other.atomic_props
        )

    __hash__ = object.__hash__


def _validate(wts: Wts) -> None:
    states = set(wts.states)
    if len(states) != len(wts.states):
        raise WtsError("wts.states", "duplicate state identifier")
    if wts.initial not in states:
        raise WtsError("wts.initial", f"dangling state {wts.initial!r}")
    if set(wts.transitions) != set(wts.costs):
        missing = set(wts.transitions) ^ set(wts.costs)
        raise WtsError("wts.costs", f"transitions and costs disagree on {sorted(missing)[:3]}")
    for (s, a), t in wts.transitions.items():
        if s not in states:
            raise WtsError(f"wts.transitions[{s},{a}]", f"dangling state {s!r}")
        if t not in states:
            raise WtsError(f"wts.transitions[{s},{a}]", f"dangling state {t!r}")
        if wts.costs[(s, a)] < 0:
            raise WtsError(f"wts.transitions[{s},{a}].cost", "negative cost")
    for s, props in wts.labels.items():
        if s not in states:
            raise WtsError(f"wts.labels.{s}", f"dangling state {s!r}")
        extra = set(props) - wts.atomic_props
        if extra:
            raise WtsError(f"wts.labels.{s}", f"propositions {sorted(extra)} not in atomic_props")


def successors(wts: Wts, s: str) -> list[Successor]:
    """Outgoing transitions of ``s`` sorted by action identifier."""
    try:
        i = wts.index[s]
    except KeyError:
        raise KeyError(f"unknown state {s!r}") from None
    return [Successor(a, wts.states[t], c) for a, t, c in wts.out_edges[i]]


def apply_plan(wts: Wts, plan: Sequence[str]) -> Trajectory:
    states = [wts.initial]
    s = wts.initial
    for k, a in enumerate(plan):
        try:
            s = wts.transitions[(s, a)]
        except KeyError:
            raise InvalidPlanError(k, s, a) from None
        states.append(s)
    return Trajectory(tuple(states), tuple(plan), tuple(wts.label(s) for s in states))


def total_cost(wts: Wts, traj: Trajectory) -> Cost:
    return sum((wts.costs[(s, a)] for s, a in zip(traj.states, traj.plan)), 0)


def grid_state(i: int, j: int) -> str:
    return f"x{i}_{j}"


def parse_grid_state(name: str) -> tuple[int, int]:
    if not name.startswith("x") or "_" not in name:
        raise ValueError(f"not a grid state: {name!r}")
    i, j = name[1:].split("_", 1)
    return int(i), int(j)


def make_grid_world(
    width: int,
    height: int,
    labels: Mapping[tuple[int, int], Iterable[str]] | None = None,
    cost=1,
    *,
    initial: tuple[int, int] = (0, 0),
    obstacles: Iterable[tuple[int, int]] = (),
    atomic_props: Iterable[str] = (),
) -> Wts:
    """4-connected grid with cardinal moves defined wherever they stay in bounds.

    Cell ``(i, j)`` is state ``x{i}_{j}``; ``East`` increments ``i`` and
    ``North`` increments ``j``.  Obstacle cells are removed entirely.
    """
    if width < 1 or height < 1:
        raise WtsError("grid", "width and height must be >= 1")
    cost = as_rational(cost)
    if cost < 0:
        raise WtsError("grid.cost", "negative cost")
    blocked = set(map(tuple, obstacles))
    for cell in blocked:
        if not (0 <= cell[0] < width and 0 <= cell[1] < height):
            raise WtsError(f"grid.obstacles.{cell[0]},{cell[1]}", "cell out of range")
    if tuple(initial) in blocked:
        raise WtsError("grid.initial", "initial cell is an obstacle")

    cells = [(i, j) for j in range(height) for i in range(width) if (i, j) not in blocked]
    lab: dict[str, frozenset[str]] = {}
    for (i, j), props in (labels or {}).items():
        if not (0 <= i < width and 0 <= j < height):
            raise WtsError(f"grid.labels.{i},{j}", "label cell out of range")
        if (i, j) in blocked:
            raise WtsError(f"grid.labels.{i},{j}", "label on an obstacle cell")
        if props:
            lab[grid_state(i, j)] = lab.get(grid_state(i, j), frozenset()) | frozenset(props)

    transitions = {}
    costs = {}
    for i, j in cells:
        for action, (di, dj) in GRID_ACTIONS.items():
            ni, nj = i + di, j + dj
            if 0 <= ni < width and 0 <= nj < height and (ni, nj) not in blocked:
                transitions[(grid_state(i, j), action)] = grid_state(ni, nj)
                costs[(grid_state(i, j), action)] = cost

    ap = frozenset(atomic_props).union(*lab.values()) if lab else frozenset(atomic_props)
    return Wts(
        states=tuple(grid_state(i, j) for i, j in cells),
        initial=grid_state(*initial),
        transitions=transitions,
        costs=costs,
        labels=lab,
        atomic_props=ap,
    )


# --- document loading -------------------------------------------------------


def _expect(cond: bool, path: str, message: str) -> None:
    if not cond:
        raise WtsError(path, message)


def _cost_at(value, path: str) -> Cost:
    try:
        c = as_rational(value)
    except (TypeError, ValueError) as exc:
        raise WtsError(path, f"schema violation: {exc}") from None
    _expect(c >= 0, path, "negative cost")
    return c


def _cell(key, path: str) -> tuple[int, int]:
    try:
        if isinstance(key, str):
            i, j = key.split(",")
            return int(i), int(j)
        i, j = key
        return int(i), int(j)
    except (TypeError, ValueError):
        raise WtsError(path, f"schema violation: expected cell 'i,j' or [i, j], got {key!r}") from None


def _prop_list(value, path: str) -> list[str]:
    if isinstance(value, str):
        value = [value]
    _expect(isinstance(value, list) and all(isinstance(p, str) for p in value), path,
            "schema violation: expected a list of proposition names")
    return value


def load_grid(doc: Mapping, path: str = "grid") -> Wts:
    _expect(isinstance(doc, Mapping), path, "schema violation: expected an object")
    for key in ("width", "height"):
        _expect(isinstance(doc.get(key), int) and not isinstance(doc.get(key), bool), f"{path}.{key}",
                "schema violation: expected an integer")
    labels = {}
    raw = doc.get("labels", {})
    _expect(isinstance(raw, Mapping), f"{path}.labels", "schema violation: expected an object")
    for key, props in raw.items():
        labels[_cell(key, f"{path}.labels.{key}")] = _prop_list(props, f"{path}.labels.{key}")
    obstacles = [_cell(c, f"{path}.obstacles[{n}]") for n, c in enumerate(doc.get("obstacles", []))]
    initial = _cell(doc.get("initial", [0, 0]), f"{path}.initial")
    return make_grid_world(
        doc["width"],
        doc["height"],
        labels,
        _cost_at(doc.get("cost", 1), f"{path}.cost"),
        initial=initial,
        obstacles=obstacles,
        atomic_props=_prop_list(doc.get("atomic_props", []), f"{path}.atomic_props"),
    )


def load_explicit(doc: Mapping, path: str = "wts") -> Wts:
    _expect(isinstance(doc, Mapping), path, "schema violation: expected an object")
    states = doc.get("states")
    _expect(isinstance(states, list) and all(isinstance(s, str) for s in states), f"{path}.states",
            "schema violation: expected a list of state names")
    known = set(states)
    initial = doc.get("initial")
    _expect(isinstance(initial, str), f"{path}.initial", "schema violation: expected a state name")
    _expect(initial in known, f"{path}.initial", f"dangling state {initial!r}")

    transitions, costs = {}, {}
    raw = doc.get("transitions", [])
    _expect(isinstance(raw, list), f"{path}.transitions", "schema violation: expected a list")
    for n, tr in enumerate(raw):
        tp = f"{path}.transitions[{n}]"
        _expect(isinstance(tr, Mapping), tp, "schema violation: expected an object")
        for key in ("from", "action", "to"):
            _expect(isinstance(tr.get(key), str), f"{tp}.{key}", "schema violation: expected a string")
        src, act, dst = tr["from"], tr["action"], tr["to"]
        _expect(src in known, f"{tp}.from", f"dangling state {src!r}")
        _expect(dst in known, f"{tp}.to", f"dangling state {dst!r}")
        _expect((src, act) not in transitions, tp, f"duplicate transition ({src!r}, {act!r})")
        transitions[(src, act)] = dst
        costs[(src, act)] = _cost_at(tr.get("cost", 1), f"{tp}.cost")

    labels = {}
    raw_labels = doc.get("labels", {})
    _expect(isinstance(raw_labels, Mapping), f"{path}.labels", "schema violation: expected an object")
    for s, props in raw_labels.items():
        _expect(s in known, f"{path}.labels.{s}", f"dangling state {s!r}")
        labels[s] = frozenset(_prop_list(props, f"{path}.labels.{s}"))
    ap = frozenset(_prop_list(doc.get("atomic_props", []), f"{path}.atomic_props")).union(*labels.values())
    return Wts(tuple(states), initial, transitions, costs, labels, ap)


def load_wts(document: Mapping) -> Wts:
    """Build a :class:`Wts` from a problem document holding a ``wts`` or ``grid`` section."""
    _expect(isinstance(document, Mapping), "", "schema violation: expected an object")
    if "grid" in document and "wts" in document:
        raise WtsError("", "schema violation: give either 'wts' or 'grid', not both")
    if "grid" in document:
        return load_grid(document["grid"])
    if "wts" in document:
        return load_explicit(document["wts"])
    raise WtsError("", "schema violation: missing 'wts' or 'grid'")


def dump_wts(wts: Wts) -> dict:
    return {
        "states": list(wts.states),
        "initial": wts.initial,
        "atomic_props": sorted(wts.atomic_props),
        "transitions": [
            {"from": s, "action": a, "to": t, "cost": to_json_number(wts.costs[(s, a)])}
            for (s, a), t in sorted(wts.transitions.items(), key=lambda kv: (wts.index[kv[0][0]], kv[0][1]))
        ],
        "labels": {s: sorted(wts.labels[s]) for s in wts.states if wts.labels.get(s)},
    }
