"""Max-min heuristic: per-task cost-to-accept, combined by a max over unfinished tasks.

For each task ``j`` a multi-source Dijkstra runs backwards over the product of
the WTS with that task's DFA alone, starting from every accepting state.  The
resulting table gives, for any ``(s, q_j)``, the least cost to finish task
``j``; finishing all remaining tasks costs at least the largest of these.
"""
from __future__ import annotations

import heapq
import itertools

from ..model import Wts
from ..product import Product, ProductState, single_product
from ..rationals import INF
from ..scltl import Dfa


class HeuristicTable:
    def __init__(self, dists: list[list], n_dfa_states: list[int], accepting: list[frozenset[int]]):
        self.dists = dists  # per task, flat list indexed by s * |Q_j| + q_j
        self._nq = n_dfa_states
        self._accepting = accepting
        self._cache: dict[ProductState, object] = {}

    @property
    def n_tasks(self) -> int:
        return len(self.dists)

    def d(self, j: int, s: int, q: int):
        return self.dists[j][s * self._nq[j] + q]

    def __call__(self, p: ProductState):
        try:
            return self._cache[p]
        except KeyError:
            pass
        h = 0
        for j, (dist, nq, acc, qj) in enumerate(zip(self.dists, self._nq, self._accepting, p.q)):
            if qj not in acc:
                v = dist[p.s * nq + qj]
                if v > h:
                    h = v
        self._cache[p] = h
        return h


def single_task_distances(wts: Wts, dfa: Dfa) -> list:
    prod = single_product(wts, dfa)
    nq = dfa.num_states
    rev = prod.reverse_edges()
    dist = [INF] * (len(wts) * nq)
    counter = itertools.count()
    heap = []
    for s in range(len(wts)):
        for q in dfa.accepting:
            dist[s * nq + q] = 0
            heap.append((0, next(counter), ProductState(s, (q,))))
    heapq.heapify(heap)
    while heap:
        d, _, p = heapq.heappop(heap)
        if d > dist[p.s * nq + p.q[0]]:
            continue
        for src, _action, cost in rev.get(p, ()):
            k = src.s * nq + src.q[0]
            nd = d + cost
            if nd < dist[k]:
                dist[k] = nd
                heapq.heappush(heap, (nd, next(counter), src))
    return dist


def compute_heuristic(wts: Wts, dfas) -> HeuristicTable:
    return HeuristicTable(
        [single_task_distances(wts, d) for d in dfas],
        [d.num_states for d in dfas],
        [d.accepting for d in dfas],
    )


def h_max_min(table: HeuristicTable | None, p: ProductState):
    """Largest single-task cost-to-accept over the tasks unfinished at ``p``; 0 when none remain."""
    return 0 if table is None else table(p)


def zero_heuristic(p: ProductState):
    return 0


def heuristic_fn(prod: Product, table: HeuristicTable | None):
    return zero_heuristic if table is None else table
