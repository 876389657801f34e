"""Minimum-cost plan under a preference budget (constrained A*)."""
from __future__ import annotations

import heapq
import itertools
import time
from operator import add

from ..product import Product
from ..rationals import INF
from .common import ParetoSolution, PlanningFailure, SearchNode, SearchStats, _Clock, check_h
from .heuristic import HeuristicTable, heuristic_fn
from .labels import LabelStore, dominance_rule


def constrained_astar(
    prod: Product,
    table: HeuristicTable | None,
    mu,
    mu_max=INF,
    *,
    dominance: str = "sound",
    stats: SearchStats | None = None,
    deadline: float | None = None,
) -> ParetoSolution:
    """Cheapest plan satisfying every task whose preference cost is at most ``mu_max``.

    ``table=None`` runs with the zero heuristic.  Raises :class:`InfeasibleTasks`
    when some task is unreachable from the start and :class:`PlanningFailure`
    when the open set empties.
    """
    if mu_max < 0:
        raise ValueError("mu_max must be non-negative")
    stats = stats if stats is not None else SearchStats()
    clock = _Clock(deadline)
    started = time.perf_counter()
    h = heuristic_fn(prod, table)
    labels = LabelStore(prod, dominance_rule(mu, dominance, mu_max, cost_only_when_unbounded=True))
    counter = itertools.count()
    # without a budget mu never prunes, so it is only evaluated for the result
    budgeted = mu_max != INF
    closed: dict = {}

    p0 = prod.initial_state()
    zero = (0,) * prod.n_tasks
    mu0 = mu(zero)
    h0 = h(p0)
    check_h(h0)
    if mu0 > mu_max:
        raise PlanningFailure(f"preference cost of the empty plan already exceeds {mu_max}")
    root = SearchNode(p0, 0, zero, mu0, h0)
    # ties on f go to the deeper node, then to the smaller preference cost
    open_set = [(root.f, 0, mu0, next(counter), root)]
    g_min = {p0: 0}
    is_accepting, edges, moves = prod.is_accepting, prod.edges, prod.moves
    heappush, heappop = heapq.heappush, heapq.heappop
    key_of, covered, add_label = labels.key, labels.covered, labels.add

    try:
        while open_set:
            clock.tick()
            x = heappop(open_set)[-1]
            p = x.state
            if is_accepting(p):
                if x.g <= g_min.get(p, INF):
                    if x.pcs is None:
                        x.pcs = prod.pcs_of_plan(x.plan())
                        x.mu = mu(x.pcs)
                    return ParetoSolution.from_node(prod, x)
                continue
            if not budgeted:
                # cost-only search: a state is closed by its first expansion and
                # the PCS is rebuilt from the plan once a goal is reached
                if closed.get(p, INF) <= x.g:
                    stats.pruned += 1
                    continue
                closed[p] = x.g
                stats.expanded += 1
                for action, t, c in moves(p):
                    g = x.g + c
                    stats.generated += 1
                    if closed.get(t, INF) <= g:
                        stats.pruned += 1
                        continue
                    hv = h(t)
                    if hv == INF:
                        stats.pruned += 1
                        continue
                    if g < g_min.get(t, INF):
                        g_min[t] = g
                    child = SearchNode(t, g, None, None, g + hv, x, action)
                    heappush(open_set, (child.f, -g, 0, next(counter), child))
                continue
            key = key_of(p, x.pcs)
            if covered(key, x.g, x.mu):
                stats.pruned += 1
                continue
            add_label(key, x.g, x.mu)
            stats.expanded += 1
            for e in edges(p):
                t = e.target
                g = x.g + e.cost
                stats.generated += 1
                pcs = tuple(map(add, x.pcs, e.pcs))
                m = mu(pcs)
                if m > mu_max:
                    stats.pruned += 1
                    continue
                hv = h(t)
                if hv == INF or covered(key_of(t, pcs), g, m):
                    stats.pruned += 1
                    continue
                if g < g_min.get(t, INF):
                    g_min[t] = g
                child = SearchNode(t, g, pcs, m, g + hv, x, e.action)
                heappush(open_set, (child.f, -g, m, next(counter), child))
    finally:
        stats.seconds += time.perf_counter() - started
    raise PlanningFailure(f"no plan satisfies all tasks with preference cost <= {mu_max}")
