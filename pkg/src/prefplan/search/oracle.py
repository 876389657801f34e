"""Exhaustive enumeration of plans, used to validate the searches on small instances.

Labels are ``(product state, g, PCS)`` triples; every label reachable with
``g <= cost_bound`` is enumerated exactly once, over the raw WTS actions
(parallel edges are not collapsed).  Fully accepting labels are not extended:
past that point the PCS is frozen and extra cost can only be dominated.
"""
from __future__ import annotations

import heapq
import itertools
from collections import deque
from typing import NamedTuple

from ..product import Product, ProductState
from ..rationals import INF
from .common import dominates


class FrontPoint(NamedTuple):
    cost: object
    mu: object
    plan: tuple[str, ...]


def _non_dominated(points: dict) -> list[FrontPoint]:
    values = sorted(points)
    out = []
    for v in values:
        if not any(dominates(w, v) for w in values):
            out.append(FrontPoint(v[0], v[1], points[v]))
    out.sort(key=lambda fp: (fp.cost, -fp.mu))
    return out


def _enumerate(prod: Product, mu, cost_bound):
    p0 = prod.initial_state()
    zero = (0,) * prod.n_tasks
    start = (p0, 0, zero)
    parent = {start: None}
    queue = deque([start])
    goals: dict = {}
    frontier_lb = INF
    while queue:
        label = queue.popleft()
        p, g, pcs = label
        m = mu(pcs)
        if prod.is_accepting(p):
            goals.setdefault((g, m), label)
            continue
        for e in prod.successors(p):
            ng = g + e.cost
            npcs = tuple(a + b for a, b in zip(pcs, e.pcs))
            if ng > cost_bound:
                frontier_lb = min(frontier_lb, mu(npcs))
                continue
            nxt = (e.target, ng, npcs)
            if nxt not in parent:
                parent[nxt] = (label, e.action)
                queue.append(nxt)
    return goals, parent, frontier_lb


def _plan(parent, label) -> tuple[str, ...]:
    out = []
    while parent[label] is not None:
        label, action = parent[label]
        out.append(action)
    return tuple(reversed(out))


def brute_force_front(prod: Product, mu, cost_bound) -> list[FrontPoint]:
    """Non-dominated (cost, mu, plan) over every satisfying plan of cost at most ``cost_bound``."""
    goals, parent, _ = _enumerate(prod, mu, cost_bound)
    return _non_dominated({v: _plan(parent, lbl) for v, lbl in goals.items()})


def front_is_complete(prod: Product, mu, cost_bound) -> tuple[list[FrontPoint], bool]:
    """The bounded front and whether it is provably the unbounded one.

    Any plan costlier than the bound has a prefix whose last edge crosses it;
    since ``mu`` never decreases along a trajectory such a plan has ``mu`` at
    least the smallest ``mu`` over those crossing prefixes.
    If that is no better than the best front point, nothing beyond the bound
    can be non-dominated.
    """
    goals, parent, lb = _enumerate(prod, mu, cost_bound)
    front = _non_dominated({v: _plan(parent, lbl) for v, lbl in goals.items()})
    if lb == INF:
        return front, True
    return front, bool(front) and lb >= front[-1].mu


def accepting_reachable(prod: Product) -> bool:
    p0 = prod.initial_state()
    seen = {p0}
    queue = deque([p0])
    while queue:
        p = queue.popleft()
        if prod.is_accepting(p):
            return True
        for e in prod.successors(p):
            if e.target not in seen:
                seen.add(e.target)
                queue.append(e.target)
    return False


def _within_class(prod: Product, src: ProductState):
    """Dijkstra from ``src`` over edges that keep the set of accepted tasks unchanged."""
    mask = prod.acc_mask(src)
    dist = {src: 0}
    back = {src: None}
    tie = itertools.count()
    heap = [(0, next(tie), src)]
    while heap:
        d, _, p = heapq.heappop(heap)
        if d > dist[p]:
            continue
        for e in prod.successors(p):
            if prod.acc_mask(e.target) != mask:
                continue
            nd = d + e.cost
            if nd < dist.get(e.target, INF):
                dist[e.target] = nd
                back[e.target] = (p, e.action)
                heapq.heappush(heap, (nd, next(tie), e.target))
    return dist, back


def _path_to(back, p) -> list[str]:
    out = []
    while back[p] is not None:
        p, action = back[p]
        out.append(action)
    out.reverse()
    return out


def event_skeleton_front(prod: Product, mu) -> list[FrontPoint]:
    """The complete front for preferences that reward finishing the remaining tasks sooner.

    Between two moments at which some task becomes satisfied the accepted set is
    fixed, and every task still open pays the whole segment cost.  Replacing
    the segment by a cheapest path with the same endpoints inside that
    accepted set lowers the cost and lowers every open task's entry by the
    same amount, which for out-of-order delay, weighted sums and constants
    never raises ``mu``.  So front values are attained by plans made of
    cheapest in-class segments joined by accepting edges, and there are
    finitely many of those.
    """
    zero = (0,) * prod.n_tasks
    start = (prod.initial_state(), 0, zero)
    parent = {start: None}
    stack = [start]
    goals: dict = {}
    cache: dict = {}
    while stack:
        label = stack.pop()
        p, g, pcs = label
        if prod.is_accepting(p):
            goals.setdefault((g, mu(pcs)), label)
            continue
        if p not in cache:
            cache[p] = _within_class(prod, p)
        dist, back = cache[p]
        mask = prod.acc_mask(p)
        for t, d in dist.items():
            for e in prod.successors(t):
                if prod.acc_mask(e.target) == mask:
                    continue
                open_cost = d + e.cost
                npcs = tuple(c if mask >> i & 1 else c + open_cost for i, c in enumerate(pcs))
                nxt = (e.target, g + open_cost, npcs)
                if nxt not in parent:
                    parent[nxt] = (label, tuple(_path_to(back, t)) + (e.action,))
                    stack.append(nxt)
    points = {}
    for v, label in goals.items():
        plan = []
        while parent[label] is not None:
            label, seg = parent[label]
            plan[:0] = seg
        points[v] = tuple(plan)
    return _non_dominated(points)


def exhaustive_front(prod: Product, mu, initial_bound=8, max_bound=None) -> list[FrontPoint]:
    """The complete front.

    Uses :func:`event_skeleton_front` for the built-in preference kinds and
    otherwise doubles the cost bound until completeness is certified.
    """
    if not accepting_reachable(prod):
        return []
    if getattr(mu, "rewards_early_completion", False):
        return event_skeleton_front(prod, mu)
    bound = max(initial_bound, 1)
    while True:
        front, complete = front_is_complete(prod, mu, bound)
        if complete:
            return front
        if max_bound is not None and bound >= max_bound:
            raise RuntimeError(f"front not certified complete at cost bound {bound}")
        bound *= 2


def reachable_states(prod: Product, limit: int | None = None) -> list[ProductState]:
    p0 = prod.initial_state()
    seen = {p0: None}
    queue = deque([p0])
    while queue:
        p = queue.popleft()
        for e in prod.successors(p):
            if e.target not in seen:
                seen[e.target] = None
                if limit is not None and len(seen) > limit:
                    raise OverflowError(f"more than {limit} reachable product states")
                queue.append(e.target)
    return list(seen)


def exact_cost_to_go(prod: Product, states) -> dict[ProductState, object]:
    """Exact least cost from each state in ``states`` to a fully accepting state.

    ``states`` must be closed under successors (e.g. the reachable set).
    Computed by backward Dijkstra over the edges among those states.
    """
    rev: dict = {}
    for p in states:
        for e in prod.successors(p):
            rev.setdefault(e.target, []).append((p, e.cost))
    dist = {p: INF for p in states}
    tie = itertools.count()
    heap = []
    for p in states:
        if prod.is_accepting(p):
            dist[p] = 0
            heap.append((0, next(tie), p))
    heapq.heapify(heap)
    while heap:
        d, _, p = heapq.heappop(heap)
        if d > dist[p]:
            continue
        for src, c in rev.get(p, ()):
            if d + c < dist[src]:
                dist[src] = d + c
                heapq.heappush(heap, (d + c, next(tie), src))
    return dist
