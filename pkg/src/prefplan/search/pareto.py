"""Bi-objective best-first search for the (cost, preference) Pareto front."""
from __future__ import annotations

import heapq
import itertools
import time
from operator import add

from ..product import Product
from ..rationals import INF
from .common import ParetoSolution, SearchNode, SearchStats, _Clock, InfeasibleTasks, check_h
from .heuristic import HeuristicTable, heuristic_fn
from .labels import LabelStore, dominance_rule


def pareto_front(
    prod: Product,
    table: HeuristicTable | None,
    mu,
    *,
    dominance: str = "sound",
    stats: SearchStats | None = None,
    deadline: float | None = None,
    cost_bound=INF,
) -> list[ParetoSolution]:
    """All non-dominated (cost, mu) values over satisfying plans, one witness each.

    Nodes leave the open set in lexicographic (f, mu) order, so goals appear
    by increasing cost and a goal is a new front point exactly when its mu is
    below every point found so far.  Sorted by cost ascending, mu descending.

    ``cost_bound`` drops plans costing more than the bound.  The built-in
    preferences always terminate without it; a bare callable only gets
    exact-duplicate pruning, so it needs a finite bound (or a deadline)
    whenever its front has no zero point.
    """
    stats = stats if stats is not None else SearchStats()
    clock = _Clock(deadline)
    started = time.perf_counter()
    h = heuristic_fn(prod, table)
    labels = LabelStore(prod, dominance_rule(mu, dominance))
    counter = itertools.count()

    p0 = prod.initial_state()
    zero = (0,) * prod.n_tasks
    try:
        check_h(h(p0))
    except InfeasibleTasks:
        return []
    root = SearchNode(p0, 0, zero, mu(zero), h(p0))
    open_set = [(root.f, root.mu, next(counter), root)]
    front: list[ParetoSolution] = []
    best_mu = INF

    try:
        while open_set:
            clock.tick()
            _, _, _, x = heapq.heappop(open_set)
            if x.mu >= best_mu:
                stats.pruned += 1
                continue
            p = x.state
            if prod.is_accepting(p):
                front.append(ParetoSolution.from_node(prod, x))
                best_mu = x.mu
                continue
            key = labels.key(p, x.pcs)
            if labels.covered(key, x.g, x.mu):
                stats.pruned += 1
                continue
            labels.add(key, x.g, x.mu)
            stats.expanded += 1
            for e in prod.edges(p):
                g = x.g + e.cost
                pcs = tuple(map(add, x.pcs, e.pcs))
                m = mu(pcs)
                stats.generated += 1
                if m >= best_mu:
                    stats.pruned += 1
                    continue
                hv = h(e.target)
                if hv == INF or g + hv > cost_bound or labels.covered(labels.key(e.target, pcs), g, m):
                    stats.pruned += 1
                    continue
                child = SearchNode(e.target, g, pcs, m, g + hv, x, e.action)
                heapq.heappush(open_set, (child.f, m, next(counter), child))
    finally:
        stats.seconds += time.perf_counter() - started
    return front
