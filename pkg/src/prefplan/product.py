"""Implicit product of a WTS with one DFA per task.

Product states are generated on demand through :meth:`Product.successors`;
the full product is never built.  Each DFA has already consumed the label of
the initial WTS state when the search starts, so a task that holds at the
start is accepted in the initial product state.
"""
from __future__ import annotations

import itertools
from typing import Iterator, NamedTuple, Sequence

from .model import Wts
from .rationals import Cost
from .scltl import Dfa


class ProductState(NamedTuple):
    s: int
    q: tuple[int, ...]


class Edge(NamedTuple):
    action: str
    target: ProductState
    cost: Cost
    pcs: tuple[Cost, ...]  # transition-PCS: the cost for every task not yet accepted, 0 otherwise


class Product:
    def __init__(self, wts: Wts, dfas: Sequence[Dfa]):
        if not dfas:
            raise ValueError("a product needs at least one task automaton")
        self.wts = wts
        self.dfas = tuple(dfas)
        self.n_tasks = len(self.dfas)
        self.full_mask = (1 << self.n_tasks) - 1
        self._label_masks = [tuple(d.mask(lbl) for lbl in wts.label_sets) for d in self.dfas]
        self._tables = [d.table for d in self.dfas]
        self._accepting = [d.accepting for d in self.dfas]
        self._acc: dict[ProductState, int] = {}
        self._tpcs: dict[tuple[int, Cost], tuple[Cost, ...]] = {}
        # states with identical masks for every DFA step the DFAs identically,
        # so the step is cached per (DFA states, mask signature)
        sigs: dict[tuple[int, ...], int] = {}
        self._sig = tuple(
            sigs.setdefault(tuple(m[s] for m in self._label_masks), len(sigs)) for s in range(len(wts))
        )
        self._sig_masks = tuple(sorted(sigs, key=sigs.get))
        self._step_cache: dict[tuple[tuple[int, ...], int], tuple[int, ...]] = {}
        self._parallel = any(
            len({t for _, t, _ in out}) < len(out) for out in wts.out_edges
        )

    def __len__(self) -> int:
        """Size of the full (mostly unreachable) state space."""
        n = len(self.wts)
        for d in self.dfas:
            n *= d.num_states
        return n

    def _observe(self, q: tuple[int, ...], s: int) -> tuple[int, ...]:
        key = (q, self._sig[s])
        try:
            return self._step_cache[key]
        except KeyError:
            pass
        masks = self._sig_masks[key[1]]
        out = tuple([table[qi][m] for table, qi, m in zip(self._tables, q, masks)])
        self._step_cache[key] = out
        return out

    def initial_state(self) -> ProductState:
        s0 = self.wts.initial_index
        return ProductState(s0, self._observe(tuple(d.initial for d in self.dfas), s0))

    def acc_mask(self, p: ProductState) -> int:
        try:
            return self._acc[p]
        except KeyError:
            pass
        m = 0
        for i, (qi, acc) in enumerate(zip(p.q, self._accepting)):
            if qi in acc:
                m |= 1 << i
        self._acc[p] = m
        return m

    def acc_set(self, p: ProductState) -> frozenset[int]:
        """Indices of the tasks already satisfied at ``p``."""
        return frozenset(i for i, (qi, acc) in enumerate(zip(p.q, self._accepting)) if qi in acc)

    def is_accepting(self, p: ProductState) -> bool:
        return self.acc_mask(p) == self.full_mask

    def transition_pcs(self, p: ProductState, cost: Cost) -> tuple[Cost, ...]:
        mask = self.acc_mask(p)
        try:
            return self._tpcs[(mask, cost)]
        except KeyError:
            pass
        out = tuple(0 if mask >> i & 1 else cost for i in range(self.n_tasks))
        self._tpcs[(mask, cost)] = out
        return out

    def successors(self, p: ProductState) -> list[Edge]:
        """One edge per WTS action enabled at ``p.s``, in action order."""
        out = []
        q = p.q
        observe, tpcs = self._observe, self.transition_pcs
        for action, t, cost in self.wts.out_edges[p.s]:
            out.append(Edge(action, ProductState(t, observe(q, t)), cost, tpcs(p, cost)))
        return out

    def moves(self, p: ProductState) -> list[tuple[str, ProductState, Cost]]:
        """``(action, target, cost)`` per enabled action, without the PCS increment."""
        q, observe = p.q, self._observe
        return [(a, ProductState(t, observe(q, t)), c) for a, t, c in self.wts.out_edges[p.s]]

    def pcs_of_plan(self, plan: Sequence[str]) -> tuple[Cost, ...]:
        """Sum of transition PCS along ``plan`` from the initial state."""
        pcs = (0,) * self.n_tasks
        for e in self.run(plan):
            pcs = tuple(a + b for a, b in zip(pcs, e.pcs))
        return pcs

    def edges(self, p: ProductState) -> list[Edge]:
        """Like :meth:`successors` but parallel edges to the same target collapse to the cheapest."""
        if not self._parallel:
            return self.successors(p)
        best: dict[ProductState, Edge] = {}
        for e in self.successors(p):
            if e.target not in best or e.cost < best[e.target].cost:
                best[e.target] = e
        return list(best.values())

    def step(self, p: ProductState, action: str) -> Edge:
        for e in self.successors(p):
            if e.action == action:
                return e
        raise KeyError(f"action {action!r} not enabled at {self.describe(p)}")

    def run(self, plan: Sequence[str]) -> list[Edge]:
        p = self.initial_state()
        out = []
        for a in plan:
            e = self.step(p, a)
            out.append(e)
            p = e.target
        return out

    def states(self) -> Iterator[ProductState]:
        """Every combination of WTS and DFA states, reachable or not."""
        qs = [range(d.num_states) for d in self.dfas]
        for s in range(len(self.wts)):
            for q in itertools.product(*qs):
                yield ProductState(s, q)

    def reverse_edges(self) -> dict[ProductState, list[tuple[ProductState, str, Cost]]]:
        """Map each state to its predecessors ``(source, action, cost)`` over the full state space."""
        rev: dict[ProductState, list[tuple[ProductState, str, Cost]]] = {}
        for p in self.states():
            for e in self.successors(p):
                rev.setdefault(e.target, []).append((p, e.action, e.cost))
        return rev

    def describe(self, p: ProductState) -> str:
        qs = ", ".join(d.names[qi] for d, qi in zip(self.dfas, p.q))
        return f"({self.wts.states[p.s]}; {qs})"


def single_product(wts: Wts, dfa: Dfa) -> Product:
    """The product with one task automaton, as used by the heuristic precompute."""
    return Product(wts, [dfa])
