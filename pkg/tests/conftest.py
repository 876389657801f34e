import json
from importlib import resources

import pytest

from prefplan.model import make_grid_world
from prefplan.problem import load_problem
from prefplan.scltl import formula_to_dfa, parse_scltl

EXAMPLE1_LABELS = {(2, 0): ["dirt"], (1, 1): ["plant"], (1, 2): ["rock"], (2, 2): ["charge"]}
EXAMPLE1_TASKS = ["F charge", "F (plant & F rock)", "!plant U dirt"]
EXAMPLE3_PLAN = ["East", "East", "West", "North", "North", "East"]


def data_path(name: str):
    return resources.files("prefplan") / "data" / name


def load_data(name: str):
    return load_problem(json.loads(data_path(name).read_text()))


@pytest.fixture
def ex1_wts():
    return make_grid_world(3, 3, EXAMPLE1_LABELS)


@pytest.fixture
def ex1_formulas():
    return [parse_scltl(t) for t in EXAMPLE1_TASKS]


@pytest.fixture
def ex1_dfas(ex1_formulas):
    return [formula_to_dfa(f) for f in ex1_formulas]


@pytest.fixture
def ex1_problem():
    return load_data("example1.json")


def pytest_terminal_summary(terminalreporter):
    lines = []
    for key in ("passed", "failed"):
        for rep in terminalreporter.stats.get(key, []):
            for name, value in getattr(rep, "user_properties", []):
                if name == "criterion":
                    lines.append(value)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip("]"))):
            terminalreporter.write_line(line)
