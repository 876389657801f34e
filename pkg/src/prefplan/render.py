"""Deterministic SVG output: grid worlds with a trajectory overlay, and Pareto-front scatters."""
from __future__ import annotations

from typing import Sequence
from xml.sax.saxutils import escape

from .model import apply_plan, parse_grid_state
from .problem import Problem

CELL = 40
MARGIN = 24


class RenderError(ValueError):
    pass


def _num(x: float) -> str:
    s = f"{x:.2f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def render_grid(problem: Problem, plan: Sequence[str] = ()) -> str:
    """Grid cells with their propositions, one arrow per plan step and the robot at the start."""
    if problem.grid is None:
        raise RenderError("trajectory rendering is unsupported for a non-grid model")
    w, h = problem.grid["width"], problem.grid["height"]
    traj = apply_plan(problem.wts, plan)

    def centre(state: str) -> tuple[float, float]:
        i, j = parse_grid_state(state)
        # north is up: row 0 of the grid is drawn at the bottom
        return MARGIN + (i + 0.5) * CELL, MARGIN + (h - 1 - j + 0.5) * CELL

    width, height = 2 * MARGIN + w * CELL, 2 * MARGIN + h * CELL
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        "<defs><marker id=\"head\" markerWidth=\"8\" markerHeight=\"8\" refX=\"7\" refY=\"4\" "
        "orient=\"auto\"><path d=\"M0,0 L8,4 L0,8 z\" fill=\"#c0392b\"/></marker></defs>",
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]
    present = {parse_grid_state(s) for s in problem.wts.states}
    for j in range(h):
        for i in range(w):
            x, y = MARGIN + i * CELL, MARGIN + (h - 1 - j) * CELL
            fill = "#ffffff" if (i, j) in present else "#555555"
            cls = "cell" if (i, j) in present else "obstacle"
            out.append(f'<rect class="{cls}" x="{x}" y="{y}" width="{CELL}" height="{CELL}" '
                       f'fill="{fill}" stroke="#999999"/>')
    for state in problem.wts.states:
        props = sorted(problem.wts.label(state))
        if props:
            cx, cy = centre(state)
            out.append(f'<text class="label" x="{_num(cx)}" y="{_num(cy - CELL / 4)}" font-size="9" '
                       f'text-anchor="middle">{escape(",".join(props))}</text>')
    for a, b in zip(traj.states, traj.states[1:]):
        (x1, y1), (x2, y2) = centre(a), centre(b)
        # stop short of the centre so consecutive heads stay visible
        x2s, y2s = x1 + 0.8 * (x2 - x1), y1 + 0.8 * (y2 - y1)
        out.append(f'<line class="arrow" x1="{_num(x1)}" y1="{_num(y1)}" x2="{_num(x2s)}" y2="{_num(y2s)}" '
                   f'stroke="#c0392b" stroke-width="2" marker-end="url(#head)"/>')
    rx, ry = centre(traj.states[0])
    out.append(f'<circle class="robot" cx="{_num(rx)}" cy="{_num(ry)}" r="{CELL // 5}" fill="#2c3e50"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_front(points: Sequence[tuple]) -> str:
    """Scatter of ``(cost, mu)`` pairs with labelled axes."""
    pw, ph, pad = 360, 260, 50
    width, height = pw + 2 * pad, ph + 2 * pad
    costs = [float(p[0]) for p in points]
    mus = [float(p[1]) for p in points]

    def scale(values):
        lo, hi = (min(values), max(values)) if values else (0.0, 1.0)
        if hi == lo:
            lo, hi = lo - 1, hi + 1
        return lambda v: (v - lo) / (hi - lo)

    sx, sy = scale(costs), scale(mus)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<line class="axis" x1="{pad}" y1="{pad + ph}" x2="{pad + pw}" y2="{pad + ph}" stroke="black"/>',
        f'<line class="axis" x1="{pad}" y1="{pad}" x2="{pad}" y2="{pad + ph}" stroke="black"/>',
        f'<text x="{pad + pw // 2}" y="{height - 12}" text-anchor="middle" font-size="13">cost</text>',
        f'<text x="14" y="{pad + ph // 2}" text-anchor="middle" font-size="13" '
        f'transform="rotate(-90 14 {pad + ph // 2})">μ (preference cost)</text>',
    ]
    for (c, m), raw in zip(zip(costs, mus), points):
        x = pad + 10 + sx(c) * (pw - 20)
        y = pad + ph - 10 - sy(m) * (ph - 20)
        out.append(f'<circle class="point" cx="{_num(x)}" cy="{_num(y)}" r="4" fill="#2980b9"/>')
        out.append(f'<text x="{_num(x + 6)}" y="{_num(y - 6)}" font-size="10">({raw[0]}, {raw[1]})</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
