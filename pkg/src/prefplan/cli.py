"""Command-line interface.

Exit codes: 0 success, 1 no plan (infeasible task, preference budget too
tight, or timeout), 2 bad input, 3 a result failed re-validation.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from pathlib import Path

from . import bench
from .model import InvalidPlanError
from .problem import Problem, ProblemError, check_reported, read_problem
from .rationals import INF, as_rational, format_rational, parse_bound, to_json_number
from .render import RenderError, render_front, render_grid
from .search import (
    DOMINANCE_MODES,
    InfeasibleTasks,
    PlanningFailure,
    SearchStats,
    SearchTimeout,
    compute_heuristic,
    constrained_astar,
    pareto_front,
)

EXIT_OK, EXIT_NO_PLAN, EXIT_INPUT, EXIT_INVARIANT = 0, 1, 2, 3
CSV_FIELDS = ["cost", "mu", "pcs", "plan"]


class InputError(Exception):
    pass


class InvariantError(Exception):
    pass


def _mu_max_arg(text: str):
    try:
        v = parse_bound(text)
    except (TypeError, ValueError):
        raise argparse.ArgumentTypeError(f"expected a non-negative rational or 'inf', got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _seed_arg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an unsigned 64-bit integer, got {text!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be in [0, 2^64)")
    return v


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected seconds, got {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _common(p: argparse.ArgumentParser, *, search: bool = True) -> None:
    p.add_argument("--spec", required=True, metavar="PATH", help="problem file (JSON)")
    p.add_argument("--out", metavar="PATH", help="write the result here instead of stdout")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--seed", type=_seed_arg, default=0, help="accepted for symmetry; searches are deterministic")
    if search:
        p.add_argument("--no-heuristic", action="store_true", help="search with h = 0")
        p.add_argument("--dominance", choices=DOMINANCE_MODES, default=None,
                       help="label pruning rule (default: from the problem file, else sound)")
        p.add_argument("--timeout", type=_positive_float, default=None, metavar="SECS")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="prefplan", description="Preference-aware planning for scLTL tasks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("plan", help="cheapest plan within a preference budget")
    _common(p)
    p.add_argument("--mu-max", type=_mu_max_arg, default=None, metavar="R|inf",
                   help="preference budget (default: from the problem file, else inf)")

    p = sub.add_parser("front", help="Pareto front of cost against preference cost")
    _common(p)
    p.add_argument("--svg", metavar="PATH", help="also write a scatter of the front")

    p = sub.add_parser("bench", help="random benchmark, with and without the heuristic")
    p.add_argument("--size", type=int, default=10, help="grid side length")
    p.add_argument("--n", type=int, nargs="+", default=[2, 3, 4, 5], metavar="N", help="task counts")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=_seed_arg, default=0)
    p.add_argument("--timeout", type=_positive_float, default=120.0, metavar="SECS", help="per trial")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--algorithms", nargs="+", choices=bench.ALGORITHMS, default=list(bench.ALGORITHMS))
    p.add_argument("--mu-max", type=_mu_max_arg, default=INF, metavar="R|inf",
                   help="preference budget for the single-plan runs")
    p.add_argument("--out", metavar="PATH", help="write the summary here instead of stdout")
    p.add_argument("--trials-out", metavar="PATH", help="write one CSV row per trial")
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("render", help="SVG of a plan on a grid world, or of a front")
    _common(p, search=False)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--plan", default=None, help="space-separated actions")
    src.add_argument("--results", metavar="PATH", help="CSV or JSON written by plan/front")
    p.add_argument("--row", type=int, default=0, help="which result row to draw (with --results)")
    p.add_argument("--front", action="store_true", help="draw the (cost, mu) scatter of --results")

    p = sub.add_parser("validate", help="replay results written by plan/front")
    _common(p, search=False)
    p.add_argument("--results", required=True, metavar="PATH")
    return parser


# --- helpers --------------------------------------------------------------------------


def _load(path: str) -> Problem:
    try:
        return read_problem(path)
    except ProblemError as exc:
        raise InputError(str(exc)) from None


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _row(sol) -> dict:
    return {
        "cost": format_rational(sol.cost),
        "mu": format_rational(sol.mu),
        "pcs": ";".join(format_rational(c) for c in sol.pcs),
        "plan": " ".join(sol.plan),
    }


def _json_solution(sol) -> dict:
    return {
        "cost": to_json_number(sol.cost),
        "mu": to_json_number(sol.mu),
        "pcs": [to_json_number(c) for c in sol.pcs],
        "plan": list(sol.plan),
        "trajectory": list(sol.trajectory.states),
    }


def _csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def _verify(problem: Problem, sol) -> None:
    issues = check_reported(problem, sol.plan, sol.cost, sol.mu, sol.pcs)
    if issues:
        raise InvariantError("returned plan failed replay: " + "; ".join(issues))


def _search_setup(problem: Problem, args):
    use_h = problem.options.get("heuristic", True) and not args.no_heuristic
    dominance = args.dominance or problem.options.get("dominance", "sound")
    deadline = None if args.timeout is None else time.monotonic() + args.timeout
    table = compute_heuristic(problem.wts, problem.dfas) if use_h else None
    return table, dominance, deadline


def read_results(path: str) -> list[dict]:
    """Rows of a plan/front result file as dicts with cost, mu, plan and optionally pcs."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        if text.lstrip().startswith(("{", "[")):
            doc = json.loads(text)
            items = doc.get("front", [doc.get("solution")]) if isinstance(doc, dict) else doc
            rows = []
            for it in items:
                if it is None:
                    continue
                rows.append({
                    "cost": as_rational(it["cost"]),
                    "mu": as_rational(it["mu"]),
                    "pcs": tuple(as_rational(c) for c in it["pcs"]) if "pcs" in it else None,
                    "plan": list(it["plan"]),
                })
            return rows
        rows = []
        for rec in csv.DictReader(io.StringIO(text)):
            pcs = rec.get("pcs")
            rows.append({
                "cost": as_rational(rec["cost"]),
                "mu": as_rational(rec["mu"]),
                "pcs": tuple(as_rational(c) for c in pcs.split(";")) if pcs else None,
                "plan": rec["plan"].split(),
            })
        return rows
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise InputError(f"{path}: malformed results file ({exc})") from None


# --- commands ---------------------------------------------------------------------------


def cmd_plan(args) -> int:
    problem = _load(args.spec)
    mu_max = args.mu_max if args.mu_max is not None else problem.mu_max
    table, dominance, deadline = _search_setup(problem, args)
    stats = SearchStats()
    try:
        sol = constrained_astar(problem.product(), table, problem.preference, mu_max,
                                dominance=dominance, stats=stats, deadline=deadline)
    except InfeasibleTasks as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_NO_PLAN
    except PlanningFailure as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return EXIT_NO_PLAN
    except SearchTimeout:
        print("failure: search timed out", file=sys.stderr)
        return EXIT_NO_PLAN
    _verify(problem, sol)
    if args.format == "json":
        doc = {"mu_max": to_json_number(mu_max), "solution": _json_solution(sol), "expansions": stats.expanded}
        _write(json.dumps(doc, indent=2) + "\n", args.out)
    else:
        _write(_csv([_row(sol)]), args.out)
    return EXIT_OK


def cmd_front(args) -> int:
    problem = _load(args.spec)
    table, dominance, deadline = _search_setup(problem, args)
    stats = SearchStats()
    try:
        front = pareto_front(problem.product(), table, problem.preference,
                             dominance=dominance, stats=stats, deadline=deadline)
    except SearchTimeout:
        print("failure: search timed out", file=sys.stderr)
        return EXIT_NO_PLAN
    for sol in front:
        _verify(problem, sol)
    if args.format == "json":
        doc = {"front": [_json_solution(s) for s in front], "expansions": stats.expanded}
        _write(json.dumps(doc, indent=2) + "\n", args.out)
    else:
        _write(_csv([_row(s) for s in front]), args.out)
    if args.svg:
        Path(args.svg).write_text(render_front([(s.cost, s.mu) for s in front]))
    if not front:
        print("infeasible: no plan satisfies all tasks", file=sys.stderr)
        return EXIT_NO_PLAN
    return EXIT_OK


def cmd_bench(args) -> int:
    try:
        config = bench.BenchConfig(
            size=args.size, n_values=tuple(args.n), trials=args.trials, seed=args.seed,
            timeout=args.timeout, algorithms=tuple(args.algorithms), mu_max=args.mu_max,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.size < 3:
        raise InputError("grid size must be >= 3 to place three cells per task")
    results = bench.run_bench(config, jobs=args.jobs)
    if args.trials_out:
        Path(args.trials_out).write_text(bench.trials_csv(results))
    rows = bench.summarize(results)
    if args.format == "json":
        doc = {
            "config": {"size": config.size, "n": list(config.n_values), "trials": config.trials,
                       "seed": config.seed, "timeout_s": config.timeout},
            "summary": [vars(r) for r in rows],
            "heuristic_regressions": bench.heuristic_regressions(results),
        }
        _write(json.dumps(doc, indent=2) + "\n", args.out)
    else:
        _write(bench.summary_csv(rows), args.out)
    for n, trial, alg in bench.heuristic_regressions(results):
        print(f"note: N={n} trial {trial} ({alg}) expanded more nodes with the heuristic", file=sys.stderr)
    return EXIT_OK


def cmd_render(args) -> int:
    problem = _load(args.spec)
    if args.front:
        if not args.results:
            raise InputError("--front needs --results")
        svg = render_front([(r["cost"], r["mu"]) for r in read_results(args.results)])
    else:
        if args.results:
            rows = read_results(args.results)
            if not 0 <= args.row < len(rows):
                raise InputError(f"--row {args.row} out of range ({len(rows)} rows)")
            plan = rows[args.row]["plan"]
        else:
            plan = (args.plan or "").split()
        try:
            svg = render_grid(problem, plan)
        except RenderError as exc:
            raise InputError(str(exc)) from None
        except InvalidPlanError as exc:
            raise InputError(f"plan does not apply: {exc}") from None
    _write(svg, args.out)
    return EXIT_OK


def cmd_validate(args) -> int:
    problem = _load(args.spec)
    rows = read_results(args.results)
    bad = 0
    lines = []
    for n, r in enumerate(rows):
        issues = check_reported(problem, r["plan"], r["cost"], r["mu"], r["pcs"])
        if issues:
            bad += 1
            lines.append(f"row {n}: FAIL {'; '.join(issues)}")
        else:
            lines.append(f"row {n}: ok cost={format_rational(r['cost'])} mu={format_rational(r['mu'])}")
    lines.append(f"{len(rows) - bad}/{len(rows)} rows replay to their reported values")
    _write("\n".join(lines) + "\n", args.out)
    return EXIT_INVARIANT if bad else EXIT_OK


COMMANDS = {"plan": cmd_plan, "front": cmd_front, "bench": cmd_bench, "render": cmd_render, "validate": cmd_validate}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantError as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
