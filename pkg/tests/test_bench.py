import csv
import io

import pytest

from prefplan.bench import BenchConfig, heuristic_regressions, run_bench, run_trial, summarize, summary_csv, trials_csv


@pytest.fixture(scope="module")
def small_results():
    return run_bench(BenchConfig(size=6, n_values=(2, 3), trials=2, timeout=30))


def test_trial_is_reproducible():
    cfg = BenchConfig(size=6, trials=1)
    a = run_trial(cfg, 3, 0, "front", True)
    b = run_trial(cfg, 3, 0, "front", True)
    assert (a.status, a.expansions, a.cost) == (b.status, b.expansions, b.cost)


def test_parallel_matches_serial(small_results):
    par = run_bench(BenchConfig(size=6, n_values=(2, 3), trials=2, timeout=30), jobs=2)
    key = lambda r: (r.n, r.trial, r.algorithm, r.heuristic, r.status, r.expansions, r.cost)
    assert sorted(map(key, par)) == sorted(map(key, small_results))


def test_heuristic_and_blind_agree(small_results):
    by = {(r.n, r.trial, r.algorithm, r.heuristic): r for r in small_results}
    for (n, t, alg, h), r in by.items():
        if h:
            assert r.cost == by[(n, t, alg, False)].cost


def test_summary_columns(small_results):
    rows = summarize(small_results)
    assert len(rows) == 2 * 2 * 2
    table = list(csv.reader(io.StringIO(summary_csv(rows))))
    assert table[0][0] == "n" and len(table) == 3
    assert all(len(line) == len(table[0]) for line in table)
    trials = list(csv.DictReader(io.StringIO(trials_csv(small_results))))
    assert len(trials) == len(small_results)
    assert isinstance(heuristic_regressions(small_results), list)


def test_timeouts_are_censored():
    r = run_trial(BenchConfig(size=10, timeout=1e-9), 5, 0, "front", False)
    assert r.status == "timeout" and r.censored


def test_config_validation():
    with pytest.raises(ValueError):
        BenchConfig(trials=0)
    with pytest.raises(ValueError):
        BenchConfig(algorithms=("magic",))
