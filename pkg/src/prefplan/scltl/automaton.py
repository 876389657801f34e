"""scLTL to DFA compilation and the guarded DFA representation.

Compilation runs in three stages:

1. ``formula_to_nfa``: tableau expansion.  An NFA state is a set of pending
   obligations (a conjunction of formulas).  Expanding it yields branches
   ``(guard, next obligations)`` using ``X f -> (true, {f})`` and
   ``l U r -> expand(r) | expand(l) & (true, {l U r})``.  A state accepts at
   the end of a trace iff its obligations can be discharged without reading
   another symbol.
2. ``determinize``: subset construction over the formula's own atoms.  A
   subset containing an accepting NFA state is collapsed into one absorbing
   accepting sink; the empty subset becomes a rejecting sink.
3. Guards are kept as a lookup table indexed by the bitmask of the observed
   atoms; readable guard expressions are produced on demand.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .syntax import (
    FALSE,
    TRUE,
    And,
    Formula,
    Next,
    NotProp,
    Or,
    Prop,
    ScltlSyntaxError,
    Until,
    eval_propositional,
    parse_guard,
)

MAX_GUARD_ATOMS = 20

Obligations = frozenset  # frozenset[Formula]
Branch = tuple[int, int, Obligations]  # (required-true mask, required-false mask, next obligations)

DEAD_OBLIGATIONS = frozenset({FALSE})


class DfaError(ValueError):
    """An inline DFA that is not total, not deterministic, or not absorbing."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


def _conj(formulas: Iterable[Formula]) -> Obligations:
    out: set[Formula] = set()
    stack = list(formulas)
    while stack:
        f = stack.pop()
        if f == TRUE:
            continue
        if f == FALSE:
            return DEAD_OBLIGATIONS
        if isinstance(f, And):
            stack.extend((f.left, f.right))
        else:
            out.add(f)
    return frozenset(out)


def _accepts_at_end(f: Formula) -> bool:
    if f == TRUE:
        return True
    if isinstance(f, And):
        return _accepts_at_end(f.left) and _accepts_at_end(f.right)
    if isinstance(f, Or):
        return _accepts_at_end(f.left) or _accepts_at_end(f.right)
    if isinstance(f, Until):
        return _accepts_at_end(f.right)
    return False


def _prune_branches(branches: Iterable[Branch]) -> list[Branch]:
    """Drop duplicates and branches implied by a weaker one (looser guard, fewer obligations)."""
    uniq = sorted(set(branches), key=lambda b: (bin(b[0]).count("1") + bin(b[1]).count("1"), len(b[2])))
    kept: list[Branch] = []
    for p, n, nxt in uniq:
        if p & n or nxt == DEAD_OBLIGATIONS:
            continue
        if any(kp & p == kp and kn & n == kn and knxt <= nxt for kp, kn, knxt in kept):
            continue
        kept.append((p, n, nxt))
    return kept


class _Expander:
    def __init__(self, atoms: Sequence[str]):
        self.bit = {a: 1 << k for k, a in enumerate(atoms)}
        self.memo: dict[Formula, list[Branch]] = {}

    def formula(self, f: Formula) -> list[Branch]:
        if f in self.memo:
            return self.memo[f]
        if f == TRUE:
            out = [(0, 0, frozenset())]
        elif f == FALSE:
            out = []
        elif isinstance(f, Prop):
            out = [(self.bit[f.name], 0, frozenset())]
        elif isinstance(f, NotProp):
            out = [(0, self.bit[f.name], frozenset())]
        elif isinstance(f, And):
            out = self.product(self.formula(f.left), self.formula(f.right))
        elif isinstance(f, Or):
            out = _prune_branches(self.formula(f.left) + self.formula(f.right))
        elif isinstance(f, Next):
            out = _prune_branches([(0, 0, _conj([f.arg]))])
        elif isinstance(f, Until):
            stay = [(p, n, _conj([*nxt, f])) for p, n, nxt in self.formula(f.left)]
            out = _prune_branches(self.formula(f.right) + stay)
        else:
            raise TypeError(f"not a formula: {f!r}")
        self.memo[f] = out
        return out

    @staticmethod
    def product(left: list[Branch], right: list[Branch]) -> list[Branch]:
        return _prune_branches(
            (p1 | p2, n1 | n2, _conj([*x1, *x2])) for p1, n1, x1 in left for p2, n2, x2 in right
        )

    def obligations(self, obl: Obligations) -> list[Branch]:
        branches: list[Branch] = [(0, 0, frozenset())]
        for f in sorted(obl, key=str):
            branches = self.product(branches, self.formula(f))
        return branches


@dataclass(frozen=True, eq=False)
class Nfa:
    atoms: tuple[str, ...]
    states: tuple[Obligations, ...]
    initial: int
    accepting: frozenset[int]
    transitions: tuple[tuple[tuple[int, int, int], ...], ...]  # per state: (pos, neg, target)

    def accepts(self, trace: Sequence[Iterable[str]]) -> bool:
        current = {self.initial}
        for symbol in trace:
            m = _mask(self.atoms, symbol)
            current = {t for q in current for p, n, t in self.transitions[q] if m & p == p and not m & n}
        return bool(current & self.accepting)


def formula_to_nfa(f: Formula) -> Nfa:
    atoms = tuple(sorted(f.atoms()))
    exp = _Expander(atoms)
    start = _conj([f])
    ids = {start: 0}
    states = [start]
    trans: list[tuple[tuple[int, int, int], ...]] = []
    i = 0
    while i < len(states):
        out = []
        for p, n, nxt in exp.obligations(states[i]):
            if nxt not in ids:
                ids[nxt] = len(states)
                states.append(nxt)
            out.append((p, n, ids[nxt]))
        trans.append(tuple(out))
        i += 1
    accepting = frozenset(k for k, s in enumerate(states) if all(_accepts_at_end(g) for g in s))
    return Nfa(atoms, tuple(states), 0, accepting, tuple(trans))


def _mask(atoms: Sequence[str], symbol: Iterable[str]) -> int:
    sym = symbol if isinstance(symbol, (set, frozenset)) else set(symbol)
    m = 0
    for k, a in enumerate(atoms):
        if a in sym:
            m |= 1 << k
    return m


@dataclass(frozen=True, eq=False)
class Dfa:
    """Total deterministic automaton whose input is a set of observed propositions.

    ``table[q][m]`` is the successor of ``q`` on any symbol whose restriction to
    ``atoms`` has bitmask ``m``.  Accepting states are absorbing.
    """

    atoms: tuple[str, ...]
    initial: int
    accepting: frozenset[int]
    table: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] = ()
    source: Formula | None = field(default=None, compare=False)

    def __post_init__(self):
        if not self.names:
            object.__setattr__(self, "names", tuple(f"q{k}" for k in range(len(self.table))))

    @property
    def num_states(self) -> int:
        return len(self.table)

    def mask(self, symbol: Iterable[str]) -> int:
        return _mask(self.atoms, symbol)

    def step(self, q: int, symbol: Iterable[str]) -> int:
        return self.table[q][self.mask(symbol)]

    def run(self, trace: Sequence[Iterable[str]]) -> list[int]:
        qs = [self.initial]
        for symbol in trace:
            qs.append(self.step(qs[-1], symbol))
        return qs

    def accepts(self, trace: Sequence[Iterable[str]]) -> bool:
        return self.run(trace)[-1] in self.accepting

    def successors(self, q: int) -> set[int]:
        return set(self.table[q])

    def transitions(self, q: int) -> list[tuple[str, int]]:
        """Readable ``(guard, target)`` pairs leaving ``q``, one per distinct target."""
        return self._guards[q]

    @cached_property
    def _guards(self) -> list[list[tuple[str, int]]]:
        out = []
        for row in self.table:
            by_target: dict[int, list[int]] = {}
            for m, t in enumerate(row):
                by_target.setdefault(t, []).append(m)
            out.append([(simplify_guard(self.atoms, ms), t) for t, ms in sorted(by_target.items())])
        return out

    def __repr__(self):
        return f"Dfa(states={self.num_states}, atoms={self.atoms}, accepting={sorted(self.accepting)})"


def determinize(nfa: Nfa) -> Dfa:
    nsym = 1 << len(nfa.atoms)
    sets = nfa.states

    def canonical(members: Iterable[int]):
        members = {q for q in members if sets[q] != DEAD_OBLIGATIONS}
        if members & nfa.accepting:
            return "accept"
        if not members:
            return "dead"
        # an obligation set that is a strict superset of another member adds nothing to the union
        keep = [q for q in members if not any(sets[o] < sets[q] for o in members if o != q)]
        return frozenset(keep)

    start = canonical([nfa.initial])
    ids = {start: 0}
    order = [start]
    table: list[tuple[int, ...]] = []
    i = 0
    while i < len(order):
        cur = order[i]
        if cur in ("accept", "dead"):
            table.append((i,) * nsym)
        else:
            row = []
            for m in range(nsym):
                nxt = canonical(
                    t for q in cur for p, n, t in nfa.transitions[q] if m & p == p and not m & n
                )
                if nxt not in ids:
                    ids[nxt] = len(order)
                    order.append(nxt)
                row.append(ids[nxt])
            table.append(tuple(row))
        i += 1
    accepting = frozenset(k for k, s in enumerate(order) if s == "accept")
    return Dfa(nfa.atoms, 0, accepting, tuple(table))


def formula_to_dfa(f: Formula) -> Dfa:
    dfa = determinize(formula_to_nfa(f))
    return Dfa(dfa.atoms, dfa.initial, dfa.accepting, dfa.table, source=f)


def dfa_step(d: Dfa, q: int, symbol: Iterable[str]) -> int:
    return d.step(q, symbol)


# --- guards -------------------------------------------------------------------


def simplify_guard(atoms: Sequence[str], minterms: Sequence[int]) -> str:
    """Minimal sum-of-products expression (in formula syntax) covering ``minterms``."""
    n = 1 << len(atoms)
    if len(minterms) == n:
        return "true"
    if not minterms:
        return "false"
    from sympy import And as SAnd, Not as SNot, Or as SOr, Symbol
    from sympy.logic import SOPform

    syms = [Symbol(f"v{k}") for k in range(len(atoms))]
    # sympy wants the most significant variable first
    rows = [[(m >> k) & 1 for k in reversed(range(len(atoms)))] for m in minterms]
    expr = SOPform(list(reversed(syms)), rows)

    def lit(e):
        if isinstance(e, SNot):
            return "!" + atoms[int(e.args[0].name[1:])]
        return atoms[int(e.name[1:])]

    def term(e):
        if isinstance(e, SAnd):
            return " & ".join(sorted(lit(a) for a in e.args))
        return lit(e)

    if isinstance(expr, SOr):
        terms = sorted(term(t) for t in expr.args)
        return " | ".join(f"({t})" if " & " in t else t for t in terms)
    return term(expr)


# --- inline DFA documents -------------------------------------------------------


def load_dfa(doc: Mapping, path: str = "dfa") -> Dfa:
    """Build a DFA from ``{states, initial, accepting, transitions: [{from, guard, to}]}``.

    Guards are propositional expressions; for every state and every symbol
    exactly one outgoing guard must hold, and accepting states must only loop.
    """
    if not isinstance(doc, Mapping):
        raise DfaError(path, "schema violation: expected an object")
    names = doc.get("states")
    if not isinstance(names, list) or not names or not all(isinstance(s, str) for s in names):
        raise DfaError(f"{path}.states", "schema violation: expected a non-empty list of state names")
    if len(set(names)) != len(names):
        raise DfaError(f"{path}.states", "duplicate state name")
    index = {s: k for k, s in enumerate(names)}
    initial = doc.get("initial")
    if initial not in index:
        raise DfaError(f"{path}.initial", f"dangling state {initial!r}")
    accepting = doc.get("accepting", [])
    for s in accepting:
        if s not in index:
            raise DfaError(f"{path}.accepting", f"dangling state {s!r}")

    edges: list[list[tuple[Formula, int]]] = [[] for _ in names]
    for n, tr in enumerate(doc.get("transitions", [])):
        tp = f"{path}.transitions[{n}]"
        if not isinstance(tr, Mapping):
            raise DfaError(tp, "schema violation: expected an object")
        src, dst, guard = tr.get("from"), tr.get("to"), tr.get("guard", "true")
        if src not in index:
            raise DfaError(f"{tp}.from", f"dangling state {src!r}")
        if dst not in index:
            raise DfaError(f"{tp}.to", f"dangling state {dst!r}")
        try:
            g = parse_guard(guard) if isinstance(guard, str) else None
        except ScltlSyntaxError as exc:
            raise DfaError(f"{tp}.guard", str(exc)) from None
        if g is None:
            raise DfaError(f"{tp}.guard", "schema violation: expected a string")
        edges[index[src]].append((g, index[dst]))

    atoms = tuple(sorted(set().union(*(g.atoms() for row in edges for g, _ in row))))
    if len(atoms) > MAX_GUARD_ATOMS:
        raise DfaError(path, f"guards mention {len(atoms)} propositions; at most {MAX_GUARD_ATOMS} supported")
    table = []
    acc = {index[s] for s in accepting}
    for q, row in enumerate(edges):
        out = []
        for m in range(1 << len(atoms)):
            symbol = {a for k, a in enumerate(atoms) if m >> k & 1}
            targets = [t for g, t in row if eval_propositional(g, symbol)]
            if not targets:
                raise DfaError(f"{path}.transitions", f"not total: state {names[q]!r} has no move on {sorted(symbol)}")
            if len(targets) > 1:
                raise DfaError(
                    f"{path}.transitions",
                    f"not deterministic: state {names[q]!r} has {len(targets)} moves on {sorted(symbol)}",
                )
            if q in acc and targets[0] != q:
                raise DfaError(f"{path}.transitions", f"accepting state {names[q]!r} is not absorbing")
            out.append(targets[0])
        table.append(tuple(out))
    return Dfa(atoms, index[initial], frozenset(acc), tuple(table), tuple(names))


def dump_dfa(dfa: Dfa) -> dict:
    return {
        "states": list(dfa.names),
        "initial": dfa.names[dfa.initial],
        "accepting": [dfa.names[q] for q in sorted(dfa.accepting)],
        "transitions": [
            {"from": dfa.names[q], "guard": g, "to": dfa.names[t]}
            for q in range(dfa.num_states)
            for g, t in dfa.transitions(q)
        ],
    }


def accepts_batch(dfa: Dfa, traces, atoms: Sequence[str]):
    """Acceptance of each row of a symbol-bitmask array whose bits index ``atoms``."""
    remap = np.zeros(1 << len(atoms), dtype=np.int64)
    for m in range(1 << len(atoms)):
        remap[m] = _mask(dfa.atoms, {a for k, a in enumerate(atoms) if m >> k & 1})
    table = np.asarray(dfa.table, dtype=np.int64)
    q = np.full(traces.shape[0], dfa.initial, dtype=np.int64)
    for col in range(traces.shape[1]):
        q = table[q, remap[traces[:, col]]]
    return np.isin(q, sorted(dfa.accepting))
