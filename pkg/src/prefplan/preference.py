"""Preference cost sets (per-task completion costs) and preference functions over them.

A preference function maps a PCS to a non-negative rational; lower is more
preferred.  Besides evaluating, each function tells the searches which
partial paths may be discarded: :meth:`Preference.dominance_key` buckets
labels at the same product state and :meth:`Preference.covers` decides,
within a bucket, whether an earlier label makes a later one redundant for
every possible continuation.
"""
from __future__ import annotations

import operator
import random
from dataclasses import dataclass
from typing import Callable, Hashable, Mapping, Sequence

from .model import Trajectory, Wts
from .rationals import Cost, as_rational, to_json_number
from .scltl import Dfa, Formula, first_sat_prefix

Pcs = tuple  # tuple[Cost, ...]


class PreferenceError(ValueError):
    pass


def mu_out_of_order(pcs: Sequence[Cost], order: Sequence[int] | None = None) -> Cost:
    """Total delay of tasks finished out of the desired order.

    With ``order`` (task indices, first-desired first) the PCS is permuted
    before comparison against its sorted copy; the result is the sum of the
    positive entries of ``pcs - sorted(pcs)``.
    """
    c = [pcs[i] for i in order] if order is not None else pcs
    return sum([x - y for x, y in zip(c, sorted(c)) if x > y], 0)


def mu_weighted_sum(pcs: Sequence[Cost], weights: Sequence[Cost]) -> Cost:
    if len(pcs) != len(weights):
        raise PreferenceError(f"weight vector has length {len(weights)}, PCS has length {len(pcs)}")
    return sum((w * c for w, c in zip(weights, pcs)), 0)


_PICKERS: dict = {}


class Preference:
    """Base class; subclasses implement ``__call__``.

    The default dominance is the only rule that is safe for an arbitrary
    function of the PCS: two partial paths at the same product state with
    identical PCS, the cheaper one kept.
    """

    kind = "custom"

    def __call__(self, pcs: Sequence[Cost]) -> Cost:
        raise NotImplementedError

    def dominance_key(self, accepted: int, pcs: Pcs) -> Hashable:
        return pcs

    def covers(self, kept_g: Cost, kept_mu: Cost, g: Cost, mu: Cost) -> bool:
        return kept_g <= g

    @property
    def edge_additive(self) -> bool:
        """True when the value grows by a per-edge amount that depends only on the edge."""
        return False

    @property
    def rewards_early_completion(self) -> bool:
        """True when lowering every open task's entry by the same amount never raises the value.

        "Open" tasks are those whose entries are the largest; exhaustive
        front enumeration relies on this to discard detours.
        """
        return False

    def to_json(self) -> dict:
        raise PreferenceError(f"preference {self.kind!r} cannot be serialised")


@dataclass(frozen=True)
class OutOfOrder(Preference):
    order: tuple[int, ...] | None = None
    kind = "out_of_order"

    def __call__(self, pcs):
        return mu_out_of_order(pcs, self.order)

    def dominance_key(self, accepted, pcs):
        # Unfinished tasks all carry the running cost g, so only the finished
        # ones distinguish two labels.  With those equal, the cheaper label
        # can only lower the final delay.
        try:
            pick = _PICKERS[accepted]
        except KeyError:
            idx = [i for i in range(accepted.bit_length()) if accepted >> i & 1]
            pick = _PICKERS[accepted] = (lambda pcs: ()) if not idx else operator.itemgetter(*idx)
        return pick(pcs)

    @property
    def rewards_early_completion(self):
        return True

    def to_json(self):
        doc = {"kind": self.kind}
        if self.order is not None:
            doc["order"] = list(self.order)
        return doc


@dataclass(frozen=True)
class WeightedSum(Preference):
    weights: tuple[Cost, ...]
    kind = "weighted_sum"

    def __post_init__(self):
        if any(w < 0 for w in self.weights):
            raise PreferenceError("weights must be non-negative")

    def __call__(self, pcs):
        return mu_weighted_sum(pcs, self.weights)

    def dominance_key(self, accepted, pcs):
        return ()

    def covers(self, kept_g, kept_mu, g, mu):
        return kept_g <= g and kept_mu <= mu

    @property
    def edge_additive(self):
        return True

    @property
    def rewards_early_completion(self):
        return True

    def to_json(self):
        return {"kind": self.kind, "weights": [to_json_number(w) for w in self.weights]}


@dataclass(frozen=True)
class Constant(Preference):
    value: Cost = 0
    kind = "constant"

    def __call__(self, pcs):
        return self.value

    def dominance_key(self, accepted, pcs):
        return ()

    @property
    def edge_additive(self):
        return True

    @property
    def rewards_early_completion(self):
        return True

    def to_json(self):
        return {"kind": self.kind, "value": to_json_number(self.value)}


class FunctionPreference(Preference):
    """Wrap an arbitrary callable; searches fall back to exact-PCS dominance."""

    def __init__(self, fn: Callable[[Sequence[Cost]], Cost], name: str = "custom"):
        self.fn = fn
        self.kind = name

    def __call__(self, pcs):
        return self.fn(pcs)

    def __repr__(self):
        return f"FunctionPreference({self.kind!r})"


def load_preference(doc: Mapping, n_tasks: int, path: str = "preference") -> Preference:
    if not isinstance(doc, Mapping) or "kind" not in doc:
        raise PreferenceError(f"{path}: expected an object with a 'kind'")
    kind = doc["kind"]
    if kind == "out_of_order":
        order = doc.get("order")
        if order is not None:
            if sorted(order) != list(range(n_tasks)):
                raise PreferenceError(f"{path}.order: must be a permutation of 0..{n_tasks - 1}")
            order = tuple(order)
        return OutOfOrder(order)
    if kind == "weighted_sum":
        weights = doc.get("weights", [1] * n_tasks)
        if not isinstance(weights, list) or len(weights) != n_tasks:
            raise PreferenceError(f"{path}.weights: expected {n_tasks} weights")
        try:
            return WeightedSum(tuple(as_rational(w) for w in weights))
        except (TypeError, ValueError) as exc:
            raise PreferenceError(f"{path}.weights: {exc}") from None
    if kind == "constant":
        return Constant(as_rational(doc.get("value", 0)))
    raise PreferenceError(f"{path}.kind: unknown preference {kind!r}")


# --- PCS of a WTS trajectory ------------------------------------------------------


def first_satisfaction(task: Formula | Dfa, trace) -> int | None:
    if isinstance(task, Dfa):
        for k, q in enumerate(task.run(trace)[1:]):
            if q in task.accepting:
                return k
        return None
    return first_sat_prefix(task, trace)


def pcs_of_trajectory(wts: Wts, tasks: Sequence[Formula | Dfa], traj: Trajectory) -> Pcs:
    """Per task: cost of the actions taken before it is first satisfied, or the full cost."""
    step_costs = [wts.costs[(s, a)] for s, a in zip(traj.states, traj.plan)]
    out = []
    for task in tasks:
        k = first_satisfaction(task, traj.trace)
        out.append(sum(step_costs[:k] if k is not None else step_costs, 0))
    return tuple(out)


# --- trajectory monotonicity harness --------------------------------------------------


@dataclass
class MonotoneReport:
    trials: int
    steps_checked: int
    counterexample: dict | None = None

    @property
    def ok(self) -> bool:
        return self.counterexample is None


def check_monotone(mu: Callable, prod, trials: int = 1000, max_len: int = 30, seed: int = 0) -> MonotoneReport:
    """Random walks on the product; checks that ``mu`` never decreases along a walk."""
    rng = random.Random(seed)
    p0 = prod.initial_state()
    zero = (0,) * prod.n_tasks
    checked = 0
    for trial in range(trials):
        p, pcs, plan = p0, zero, []
        before = mu(pcs)
        for _ in range(rng.randint(1, max_len)):
            edges = prod.successors(p)
            if not edges:
                break
            e = rng.choice(edges)
            plan.append(e.action)
            pcs = tuple(a + b for a, b in zip(pcs, e.pcs))
            after = mu(pcs)
            checked += 1
            if after < before:
                return MonotoneReport(trial + 1, checked, {
                    "plan": plan, "step": len(plan) - 1, "pcs": pcs, "mu_before": before, "mu_after": after,
                })
            p, before = e.target, after
    return MonotoneReport(trials, checked)
