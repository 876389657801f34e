"""Benchmark harness: random grid problems, both searches, with and without the heuristic.

Every trial draws its own problem from a generator seeded by ``(seed, N,
trial)``, so a trial is reproducible on its own and independent of
``--jobs``.  Heuristic precompute and search are timed separately.
"""
from __future__ import annotations

import csv
import io
import random
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Iterable

from .generators import BENCH_TEMPLATE, bench_problem
from .preference import OutOfOrder
from .product import Product
from .rationals import INF, format_rational
from .scltl import formula_to_dfa
from .search import (
    InfeasibleTasks,
    PlanningFailure,
    SearchStats,
    SearchTimeout,
    compute_heuristic,
    constrained_astar,
    pareto_front,
)

ALGORITHMS = ("single", "front")


@dataclass(frozen=True)
class BenchConfig:
    size: int = 10
    n_values: tuple[int, ...] = (2, 3, 4, 5)
    trials: int = 20
    seed: int = 0
    timeout: float = 120.0
    algorithms: tuple[str, ...] = ALGORITHMS
    mu_max: object = INF
    template: str = BENCH_TEMPLATE

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if any(n < 1 for n in self.n_values):
            raise ValueError("task counts must be >= 1")
        bad = set(self.algorithms) - set(ALGORITHMS)
        if bad:
            raise ValueError(f"unknown algorithms {sorted(bad)}")


@dataclass
class TrialResult:
    n: int
    trial: int
    algorithm: str
    heuristic: bool
    status: str  # ok, timeout, infeasible
    precompute_s: float
    search_s: float
    expansions: int
    cost: str = ""
    front_size: int = 0

    @property
    def censored(self) -> bool:
        return self.status == "timeout"


def trial_rng(seed: int, n: int, trial: int) -> random.Random:
    return random.Random(f"{seed}:{n}:{trial}")


def run_trial(config: BenchConfig, n: int, trial: int, algorithm: str, heuristic: bool) -> TrialResult:
    wts, formulas = bench_problem(trial_rng(config.seed, n, trial), config.size, n, config.template)
    dfas = [formula_to_dfa(f) for f in formulas]
    prod = Product(wts, dfas)
    mu = OutOfOrder()
    t0 = time.perf_counter()
    table = compute_heuristic(wts, dfas) if heuristic else None
    pre = time.perf_counter() - t0 if heuristic else 0.0
    stats = SearchStats()
    deadline = time.monotonic() + config.timeout
    result = TrialResult(n, trial, algorithm, heuristic, "ok", pre, 0.0, 0)
    t0 = time.perf_counter()
    try:
        if algorithm == "single":
            sol = constrained_astar(prod, table, mu, config.mu_max, stats=stats, deadline=deadline)
            result.cost = format_rational(sol.cost)
        else:
            front = pareto_front(prod, table, mu, stats=stats, deadline=deadline)
            result.front_size = len(front)
            result.cost = ";".join(f"{format_rational(s.cost)}/{format_rational(s.mu)}" for s in front)
    except SearchTimeout:
        result.status = "timeout"
    except (InfeasibleTasks, PlanningFailure):
        result.status = "infeasible"
    result.search_s = time.perf_counter() - t0
    result.expansions = stats.expanded
    return result


def _job(args):
    return run_trial(*args)


def run_bench(config: BenchConfig, jobs: int = 1) -> list[TrialResult]:
    work = [
        (config, n, trial, alg, h)
        for n in config.n_values
        for trial in range(config.trials)
        for alg in config.algorithms
        for h in (False, True)
    ]
    if jobs <= 1:
        return [_job(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_job, work, chunksize=1))


@dataclass
class SummaryRow:
    n: int
    algorithm: str
    heuristic: bool
    trials: int
    timeouts: int
    median_s: float
    mean_s: float
    median_precompute_s: float
    median_expansions: float
    mean_expansions: float


def summarize(results: Iterable[TrialResult]) -> list[SummaryRow]:
    """Median and mean per (N, algorithm, heuristic); timed-out trials count at the timeout."""
    groups: dict = {}
    for r in results:
        groups.setdefault((r.n, r.algorithm, r.heuristic), []).append(r)
    rows = []
    for (n, alg, h), rs in sorted(groups.items()):
        times = [r.search_s + r.precompute_s for r in rs]
        exp = [r.expansions for r in rs]
        rows.append(SummaryRow(
            n, alg, h, len(rs), sum(r.censored for r in rs),
            statistics.median(times), statistics.fmean(times),
            statistics.median(r.precompute_s for r in rs),
            statistics.median(exp), statistics.fmean(exp),
        ))
    return rows


def heuristic_regressions(results: Iterable[TrialResult]) -> list[tuple[int, int, str]]:
    """Trials where the heuristic run expanded more nodes than the blind one."""
    by_key: dict = {}
    for r in results:
        if r.status == "ok":
            by_key[(r.n, r.trial, r.algorithm, r.heuristic)] = r.expansions
    out = []
    for (n, trial, alg, h), e in sorted(by_key.items()):
        if h and (n, trial, alg, False) in by_key and e > by_key[(n, trial, alg, False)]:
            out.append((n, trial, alg))
    return out


TRIAL_FIELDS = ["n", "trial", "algorithm", "heuristic", "status", "precompute_s", "search_s",
                "expansions", "cost", "front_size"]


def trials_csv(results: Iterable[TrialResult]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, TRIAL_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in results:
        row = asdict(r)
        row["precompute_s"] = f"{r.precompute_s:.6f}"
        row["search_s"] = f"{r.search_s:.6f}"
        w.writerow(row)
    return buf.getvalue()


def summary_csv(rows: Iterable[SummaryRow]) -> str:
    """One line per N with Table-I style columns: single/front time and expansions, blind and guided."""
    by_n: dict = {}
    for r in rows:
        by_n.setdefault(r.n, {})[(r.algorithm, r.heuristic)] = r
    cols = []
    for alg in ALGORITHMS:
        for h, tag in ((False, "no_h"), (True, "h")):
            cols.append((alg, h, tag))
    header = ["n"]
    for alg, _, tag in cols:
        header += [f"{alg}_{tag}_median_s", f"{alg}_{tag}_mean_s", f"{alg}_{tag}_median_expansions",
                   f"{alg}_{tag}_timeouts"]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for n in sorted(by_n):
        line = [n]
        for alg, h, _ in cols:
            r = by_n[n].get((alg, h))
            line += ["", "", "", ""] if r is None else [
                f"{r.median_s:.6f}", f"{r.mean_s:.6f}", f"{r.median_expansions:g}", r.timeouts,
            ]
        w.writerow(line)
    return buf.getvalue()
