from __future__ import annotations

import time
from dataclasses import dataclass, field

from ..model import Trajectory, apply_plan
from ..product import Product, ProductState
from ..rationals import INF, Cost


class PlanningFailure(Exception):
    """No plan satisfies every task within the preference budget."""


class InfeasibleTasks(PlanningFailure):
    """Some remaining task cannot be completed from the initial state at any cost."""


class SearchTimeout(Exception):
    pass


def dominates(a: tuple[Cost, Cost], b: tuple[Cost, Cost]) -> bool:
    """``a`` is no worse than ``b`` in both objectives and strictly better in one."""
    return a[0] <= b[0] and a[1] <= b[1] and a != b


class SearchNode:
    __slots__ = ("state", "g", "pcs", "mu", "f", "parent", "action")

    def __init__(self, state: ProductState, g, pcs, mu, f, parent=None, action=None):
        self.state = state
        self.g = g
        self.pcs = pcs
        self.mu = mu
        self.f = f
        self.parent = parent
        self.action = action

    def plan(self) -> list[str]:
        out = []
        node = self
        while node.parent is not None:
            out.append(node.action)
            node = node.parent
        out.reverse()
        return out

    def __repr__(self):
        return f"SearchNode({self.state}, g={self.g}, mu={self.mu}, f={self.f})"


@dataclass(frozen=True)
class ParetoSolution:
    plan: tuple[str, ...]
    trajectory: Trajectory
    cost: Cost
    mu: Cost
    pcs: tuple[Cost, ...]

    @classmethod
    def from_node(cls, prod: Product, node: SearchNode) -> "ParetoSolution":
        plan = tuple(node.plan())
        return cls(plan, apply_plan(prod.wts, plan), node.g, node.mu, node.pcs)

    @property
    def value(self) -> tuple[Cost, Cost]:
        return self.cost, self.mu


@dataclass
class SearchStats:
    expanded: int = 0
    generated: int = 0
    pruned: int = 0
    seconds: float = 0.0
    heuristic_seconds: float = 0.0


@dataclass
class _Clock:
    deadline: float | None
    every: int = 256
    _n: int = field(default=0, init=False)

    def tick(self):
        if self.deadline is None:
            return
        self._n += 1
        if self._n % self.every == 0 and time.monotonic() > self.deadline:
            raise SearchTimeout()


def check_h(h) -> None:
    if h == INF:
        raise InfeasibleTasks("a task cannot be completed from the initial state")
