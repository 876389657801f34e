"""Direct evaluation of scLTL formulas on finite traces.

Positions run over ``0..n`` where ``n = len(trace)``; position ``n`` is the
end of the trace.  At the end only ``true`` holds: atoms, negated atoms and
``X`` are false there, and an until can only be discharged by its right
operand.  With negation restricted to atoms every formula is monotone under
trace extension, so "some prefix satisfies f" and "the whole trace satisfies
f" coincide; :func:`eval_trace` still checks prefixes literally.

This module deliberately shares no code with the automaton construction.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .syntax import FALSE, TRUE, And, Formula, Next, NotProp, Or, Prop, Until

Trace = Sequence[frozenset[str]]


def holds(f: Formula, trace: Trace, i: int = 0) -> bool:
    """``trace, i |= f`` for ``0 <= i <= len(trace)``."""
    n = len(trace)
    memo: dict[tuple[Formula, int], bool] = {}

    def sat(f: Formula, i: int) -> bool:
        key = (f, i)
        if key in memo:
            return memo[key]
        if f == TRUE:
            r = True
        elif f == FALSE:
            r = False
        elif isinstance(f, Prop):
            r = i < n and f.name in trace[i]
        elif isinstance(f, NotProp):
            r = i < n and f.name not in trace[i]
        elif isinstance(f, And):
            r = sat(f.left, i) and sat(f.right, i)
        elif isinstance(f, Or):
            r = sat(f.left, i) or sat(f.right, i)
        elif isinstance(f, Next):
            r = i < n and sat(f.arg, i + 1)
        elif isinstance(f, Until):
            r = any(
                sat(f.right, j) and all(sat(f.left, k) for k in range(i, j))
                for j in range(i, n + 1)
            )
        else:
            raise TypeError(f"not a formula: {f!r}")
        memo[key] = r
        return r

    return sat(f, i)


def eval_trace(f: Formula, trace: Trace) -> bool:
    """True iff some prefix of ``trace`` satisfies ``f``."""
    return any(holds(f, trace[:k]) for k in range(len(trace) + 1))


def first_sat_prefix(f: Formula, trace: Trace) -> int | None:
    """Smallest ``K`` such that ``trace[0..K]`` (inclusive) satisfies ``f``."""
    for k in range(len(trace)):
        if holds(f, trace[: k + 1]):
            return k
    return None


def all_traces(n_atoms: int, length: int) -> np.ndarray:
    """Every trace of ``length`` symbols over ``n_atoms`` atoms, one row per trace.

    Entries are symbol bitmasks; rows are in lexicographic order with the first
    symbol most significant.
    """
    nsym = 1 << n_atoms
    if length == 0:
        return np.zeros((1, 0), dtype=np.int64)
    idx = np.arange(nsym**length, dtype=np.int64)
    cols = [(idx // nsym ** (length - 1 - k)) % nsym for k in range(length)]
    return np.stack(cols, axis=1)


def holds_batch(f: Formula, atoms: Sequence[str], traces: np.ndarray) -> np.ndarray:
    """Vectorised :func:`holds` at position 0 for a batch of equal-length traces.

    ``traces`` is an ``(m, n)`` array of symbol bitmasks over ``atoms``.  The
    rules are the same as in :func:`holds`, applied to whole columns.
    """
    m, n = traces.shape
    bit = {a: 1 << k for k, a in enumerate(atoms)}
    memo: dict[tuple[Formula, int], np.ndarray] = {}
    yes = np.ones(m, dtype=bool)
    no = np.zeros(m, dtype=bool)

    def sat(f: Formula, i: int) -> np.ndarray:
        key = (f, i)
        if key in memo:
            return memo[key]
        if f == TRUE:
            r = yes
        elif f == FALSE:
            r = no
        elif isinstance(f, Prop):
            r = (traces[:, i] & bit[f.name]) != 0 if i < n else no
        elif isinstance(f, NotProp):
            r = (traces[:, i] & bit[f.name]) == 0 if i < n else no
        elif isinstance(f, And):
            r = sat(f.left, i) & sat(f.right, i)
        elif isinstance(f, Or):
            r = sat(f.left, i) | sat(f.right, i)
        elif isinstance(f, Next):
            r = sat(f.arg, i + 1) if i < n else no
        elif isinstance(f, Until):
            r = no
            for j in range(i, n + 1):
                witness = sat(f.right, j)
                for k in range(i, j):
                    witness = witness & sat(f.left, k)
                r = r | witness
        else:
            raise TypeError(f"not a formula: {f!r}")
        memo[key] = r
        return r

    return sat(f, 0)


def eval_all_traces(f: Formula, atoms: Sequence[str], max_len: int) -> dict[int, np.ndarray]:
    """:func:`eval_trace` for every trace of length ``0..max_len`` (rows as in :func:`all_traces`)."""
    nsym = 1 << len(atoms)
    out: dict[int, np.ndarray] = {}
    for length in range(max_len + 1):
        now = holds_batch(f, atoms, all_traces(len(atoms), length))
        if length:
            # row r's prefix of length-1 is row r // nsym of the previous table
            now = now | np.repeat(out[length - 1], nsym)
        out[length] = now
    return out
