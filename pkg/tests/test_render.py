import xml.etree.ElementTree as ET

import pytest

from prefplan.model import InvalidPlanError
from prefplan.problem import Problem
from prefplan.render import RenderError, render_front, render_grid

from conftest import EXAMPLE3_PLAN


def test_grid_svg_is_well_formed(ex1_problem):
    svg = render_grid(ex1_problem, EXAMPLE3_PLAN)
    ET.fromstring(svg)
    assert svg.count('class="arrow"') == 6 and svg.count('class="robot"') == 1
    for prop in ("dirt", "plant", "rock", "charge"):
        assert prop in svg


def test_grid_svg_is_deterministic(ex1_problem):
    assert render_grid(ex1_problem, EXAMPLE3_PLAN) == render_grid(ex1_problem, EXAMPLE3_PLAN)


def test_empty_plan_draws_only_robot(ex1_problem):
    svg = render_grid(ex1_problem)
    assert 'class="arrow"' not in svg and svg.count('class="robot"') == 1


def test_invalid_plan_raises(ex1_problem):
    with pytest.raises(InvalidPlanError):
        render_grid(ex1_problem, ["South"])


def test_non_grid_raises(ex1_problem):
    explicit = Problem(ex1_problem.wts, ex1_problem.tasks, ex1_problem.preference, ex1_problem.mu_max, {}, None)
    with pytest.raises(RenderError):
        render_grid(explicit)


def test_front_scatter():
    svg = render_front([(6, 4), (9, 3)])
    ET.fromstring(svg)
    assert svg.count('class="point"') == 2 and "cost" in svg
    one = render_front([(5, 0)])
    ET.fromstring(one)
    assert one.count('class="point"') == 1
    ET.fromstring(render_front([]))
