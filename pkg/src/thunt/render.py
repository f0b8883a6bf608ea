"""Deterministic SVG rendering of scenarios and trajectories."""
from __future__ import annotations

from typing import Optional

from .agent import MoveKind, Trajectory
from .geom import Point
from .harness import Scenario

_COLORS = {
    "outer_fill": "#f7f6f1",
    "outer_stroke": "#333333",
    "obstacle_fill": "#8d99ae",
    "obstacle_stroke": "#4a5568",
    "grid": "#c8d2e0",
    MoveKind.FREE_MOVE: "#1d6fb8",
    MoveKind.PERIMETER_WALK: "#e07b00",
    "treasure": "#2a9d3a",
    "q_prime": "#8e44ad",
    "start": "#000000",
}


def _fmt(v: float) -> str:
    return f"{v:.6f}"


def _path(points, close: bool = False) -> str:
    parts = [f"M {_fmt(points[0].x)} {_fmt(points[0].y)}"]
    parts.extend(f"L {_fmt(p.x)} {_fmt(p.y)}" for p in points[1:])
    if close:
        parts.append("Z")
    return " ".join(parts)


def render_svg(scenario: Scenario, trajectory: Optional[Trajectory] = None,
               q_prime: Optional[Point] = None, lam: Optional[float] = None,
               tiling_side: Optional[float] = None, width: int = 800) -> str:
    """SVG document for a scenario, optionally with the agent trajectory,
    the treasure visibility disc, the target tile center, and the tiling
    grid anchored at the start.  Identical inputs yield identical bytes."""
    t = scenario.terrain
    x0, y0, x1, y1 = t.bbox
    margin = 0.05 * max(x1 - x0, y1 - y0, 1.0)
    vx, vy = x0 - margin, y0 - margin
    vw, vh = (x1 - x0) + 2 * margin, (y1 - y0) + 2 * margin
    height = round(width * vh / vw)
    stroke = vw / 400.0
    dot = 2.5 * stroke

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="{_fmt(vx)} {_fmt(vy)} {_fmt(vw)} {_fmt(vh)}">',
        # flip y so north is up
        f'<g transform="translate(0 {_fmt(vy * 2 + vh)}) scale(1 -1)">',
        f'<path d="{_path(t.outer.vertices, close=True)}" fill="{_COLORS["outer_fill"]}" '
        f'stroke="{_COLORS["outer_stroke"]}" stroke-width="{_fmt(stroke)}"/>',
    ]

    if tiling_side:
        s = tiling_side
        gx = scenario.start.x
        gy = scenario.start.y
        lines = []
        k = int((gx - x0) / s) + 1
        xs = [gx - i * s for i in range(1, k + 1)] + [gx + i * s for i in range(int((x1 - gx) / s) + 1)]
        ys = [gy - i * s for i in range(1, int((gy - y0) / s) + 2)] + \
             [gy + i * s for i in range(int((y1 - gy) / s) + 1)]
        for x in sorted(xs):
            lines.append(f'<line x1="{_fmt(x)}" y1="{_fmt(y0)}" x2="{_fmt(x)}" y2="{_fmt(y1)}"/>')
        for y in sorted(ys):
            lines.append(f'<line x1="{_fmt(x0)}" y1="{_fmt(y)}" x2="{_fmt(x1)}" y2="{_fmt(y)}"/>')
        out.append(f'<g stroke="{_COLORS["grid"]}" stroke-width="{_fmt(stroke / 2)}">'
                   + "".join(lines) + "</g>")

    for obs in t.obstacles:
        out.append(f'<path d="{_path(obs.vertices, close=True)}" '
                   f'fill="{_COLORS["obstacle_fill"]}" stroke="{_COLORS["obstacle_stroke"]}" '
                   f'stroke-width="{_fmt(stroke / 2)}"/>')

    if lam:
        out.append(f'<circle cx="{_fmt(scenario.treasure.x)}" cy="{_fmt(scenario.treasure.y)}" '
                   f'r="{_fmt(lam)}" fill="none" stroke="{_COLORS["treasure"]}" '
                   f'stroke-width="{_fmt(stroke)}" stroke-dasharray="{_fmt(4 * stroke)}"/>')

    if trajectory is not None:
        for piece in trajectory.pieces:
            out.append(f'<path d="{_path(piece.points)}" fill="none" '
                       f'stroke="{_COLORS[piece.kind]}" stroke-width="{_fmt(1.5 * stroke)}" '
                       f'stroke-linecap="round"/>')

    out.append(f'<circle cx="{_fmt(scenario.start.x)}" cy="{_fmt(scenario.start.y)}" '
               f'r="{_fmt(dot)}" fill="{_COLORS["start"]}"/>')
    out.append(f'<circle cx="{_fmt(scenario.treasure.x)}" cy="{_fmt(scenario.treasure.y)}" '
               f'r="{_fmt(dot)}" fill="{_COLORS["treasure"]}"/>')
    if q_prime is not None:
        d = 1.6 * dot
        out.append(f'<g stroke="{_COLORS["q_prime"]}" stroke-width="{_fmt(stroke)}">'
                   f'<line x1="{_fmt(q_prime.x - d)}" y1="{_fmt(q_prime.y - d)}" '
                   f'x2="{_fmt(q_prime.x + d)}" y2="{_fmt(q_prime.y + d)}"/>'
                   f'<line x1="{_fmt(q_prime.x - d)}" y1="{_fmt(q_prime.y + d)}" '
                   f'x2="{_fmt(q_prime.x + d)}" y2="{_fmt(q_prime.y - d)}"/></g>')

    out.append("</g></svg>")
    return "\n".join(out) + "\n"
