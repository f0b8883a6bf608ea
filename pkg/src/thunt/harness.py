"""Scenario files, end-to-end runs with verification, and the bench suite.

A run computes the advice from full knowledge, replays the hunt from the
advice alone, and checks the books: the agent must reach the target tile
center and see the treasure from it, the advice must stay within its size
budget, every trajectory piece must stay inside the terrain, and each
perimeter search must respect the doubling-search bound.
"""
from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import oracle
from .agent import CowPathStats, MoveKind, thunt
from .geom import (EPS, GeometryError, Point, Polygon, Terrain, TerrainError,
                   distance_to_boundary, point_in_terrain, sees,
                   segment_in_terrain, validate_regular_terrain)
from .generators import random_regular_terrain

CSV_HEADER = "seed,lambda,L,advice_bits,first_sight_length,ratio,max_cowpath_ratio"

ADVICE_BITS_BUDGET_BASE = 10
ADVICE_BITS_BUDGET_SLOPE = 6
COWPATH_SLACK = 1e-9


class ScenarioError(ValueError):
    pass


@dataclass(frozen=True)
class Scenario:
    terrain: Terrain
    start: Point
    treasure: Point
    fatness_c: float = 2.0
    strict: bool = True
    sight_step: Optional[float] = None

    def __post_init__(self):
        if not point_in_terrain(self.start, self.terrain):
            raise ScenarioError("start point is outside the terrain")
        if not point_in_terrain(self.treasure, self.terrain):
            raise ScenarioError("treasure is outside the terrain")
        if distance_to_boundary(self.treasure, self.terrain) <= EPS:
            raise ScenarioError("treasure must be an interior point of the terrain")


@dataclass
class RunReport:
    advice: str
    advice_bits: int
    lam: float
    rho: float
    L: float
    total_length: float
    first_sight_length: float
    ratio: float
    cowpath: list[CowPathStats] = field(default_factory=list)
    max_cowpath_ratio: float = 0.0
    q_prime: Optional[Point] = None
    failures: list[str] = field(default_factory=list)
    seed: Optional[int] = None

    @property
    def passed(self) -> bool:
        return not self.failures

    def csv_row(self) -> str:
        seed = "" if self.seed is None else str(self.seed)
        return (f"{seed},{self.lam!r},{self.L!r},{self.advice_bits},"
                f"{self.first_sight_length!r},{self.ratio!r},{self.max_cowpath_ratio!r}")


def advice_bits_budget(L: float, lam: float) -> int:
    return ADVICE_BITS_BUDGET_BASE + ADVICE_BITS_BUDGET_SLOPE * math.ceil(
        math.log2(3.0 * L / lam + 5.0))


def cowpath_bound(dmin: float) -> float:
    return max(9.0 * dmin, dmin + 2.0)


def run_scenario(scenario: Scenario, seed: Optional[int] = None) -> RunReport:
    """Advise, hunt, and verify one scenario."""
    t = scenario.terrain
    p, q = scenario.start, scenario.treasure
    failures: list[str] = []

    if scenario.strict:
        reg = validate_regular_terrain(t, scenario.fatness_c)
        if not reg:
            raise ScenarioError(f"terrain is not regular: {reg.reason}")

    spec = oracle.accessibility(t, q)
    advice = oracle.make_advice(t, p, q)
    L, _ = oracle.shortest_path(t, p, q)
    outcome = thunt(t, p, advice, treasure=q, strict=scenario.strict,
                    sight_step=scenario.sight_step)

    if not outcome.reached_qprime:
        failures.append("agent did not reach the target tile center")
    try:
        if not sees(outcome.q_prime, q, t):
            failures.append("target tile center does not see the treasure")
    except GeometryError:
        failures.append("target tile center left the terrain")
    if outcome.first_sight_length is None:
        failures.append("treasure never became visible along the trajectory")
        first_sight = math.inf
    else:
        first_sight = outcome.first_sight_length

    budget = advice_bits_budget(L, spec.lam)
    if len(advice) > budget:
        failures.append(f"advice length {len(advice)} exceeds budget {budget}")

    for piece in outcome.trajectory.pieces:
        if piece.kind is MoveKind.FREE_MOVE:
            if not segment_in_terrain(piece.points[0], piece.points[-1], t):
                failures.append("free move leaves the terrain")
                break
        else:
            ring_ok = any(
                all(_on_ring(pt, ring) for pt in piece.points)
                for _, ring in t.rings())
            if not ring_ok:
                failures.append("perimeter walk leaves its ring")
                break

    max_cp = 0.0
    for st in outcome.cowpath:
        if st.walked > cowpath_bound(st.dmin) + COWPATH_SLACK:
            failures.append(
                f"perimeter search walked {st.walked:.6f} over bound "
                f"{cowpath_bound(st.dmin):.6f}")
        if st.dmin > EPS:
            max_cp = max(max_cp, st.walked / st.dmin)

    ratio = first_sight / max(L, EPS)
    return RunReport(
        advice=advice,
        advice_bits=len(advice),
        lam=spec.lam,
        rho=spec.rho,
        L=L,
        total_length=outcome.total_length,
        first_sight_length=first_sight,
        ratio=ratio,
        cowpath=list(outcome.cowpath),
        max_cowpath_ratio=max_cp,
        q_prime=outcome.q_prime,
        failures=failures,
        seed=seed,
    )


def _on_ring(pt: Point, ring: Polygon) -> bool:
    try:
        ring.arc_of_point(pt, tol=1e-6)
        return True
    except GeometryError:
        return False


def bench_scenario(seed: int, n_obstacles: Optional[int] = None, c: float = 2.0,
                   extent: float = 10.0) -> Scenario:
    """Deterministic bench scenario for a seed (obstacle count cycles 0..10
    with the seed unless given)."""
    n = n_obstacles if n_obstacles is not None else seed % 11
    terrain, p, q = random_regular_terrain(seed, n, c=c, extent=extent)
    return Scenario(terrain, p, q, fatness_c=c)


def _bench_one(args) -> RunReport:
    seed, n_obstacles, c, extent = args
    return run_scenario(bench_scenario(seed, n_obstacles, c, extent), seed=seed)


def bench(seeds: Sequence[int], n_obstacles: Optional[int] = None, c: float = 2.0,
          extent: float = 10.0, jobs: int = 1) -> list[RunReport]:
    """Run the seeded suite; scenarios may run in parallel, rows come back
    sorted by seed so output is deterministic either way."""
    work = [(s, n_obstacles, c, extent) for s in seeds]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_bench_one, work, chunksize=4))
    else:
        reports = [_bench_one(w) for w in work]
    reports.sort(key=lambda r: (r.seed is None, r.seed))
    return reports


def reports_to_csv(reports: Sequence[RunReport]) -> str:
    lines = [CSV_HEADER]
    lines.extend(r.csv_row() for r in reports)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# scenario files


def scenario_to_dict(sc: Scenario) -> dict:
    return {
        "format": "thunt-scenario",
        "version": 1,
        "fatness_c": sc.fatness_c,
        "strict": sc.strict,
        "sight_step": sc.sight_step,
        "start": [float(sc.start.x), float(sc.start.y)],
        "treasure": [float(sc.treasure.x), float(sc.treasure.y)],
        "outer": [[v.x, v.y] for v in sc.terrain.outer.vertices],
        "obstacles": [[[v.x, v.y] for v in obs.vertices]
                      for obs in sc.terrain.obstacles],
    }


def _as_point(value, where: str) -> Point:
    if (not isinstance(value, (list, tuple)) or len(value) != 2
            or not all(isinstance(v, (int, float)) for v in value)):
        raise ScenarioError(f"field '{where}' must be a [x, y] pair of numbers")
    return Point(float(value[0]), float(value[1]))


def _as_ring(value, where: str) -> Polygon:
    if not isinstance(value, list) or len(value) < 3:
        raise ScenarioError(f"field '{where}' must be a list of at least 3 vertices")
    pts = [_as_point(v, f"{where}[{i}]") for i, v in enumerate(value)]
    try:
        return Polygon(pts)
    except GeometryError as exc:
        raise ScenarioError(f"field '{where}': {exc}") from exc


def scenario_from_dict(data: dict) -> Scenario:
    if not isinstance(data, dict):
        raise ScenarioError("scenario file must contain a JSON object")
    if data.get("format") != "thunt-scenario":
        raise ScenarioError("field 'format' must be 'thunt-scenario'")
    for key in ("start", "treasure", "outer", "obstacles"):
        if key not in data:
            raise ScenarioError(f"missing field '{key}'")
    outer = _as_ring(data["outer"], "outer")
    obstacles = [_as_ring(o, f"obstacles[{i}]") for i, o in enumerate(data["obstacles"])]
    try:
        terrain = Terrain(outer, obstacles)
    except TerrainError as exc:
        raise ScenarioError(str(exc)) from exc
    start = _as_point(data["start"], "start")
    treasure = _as_point(data["treasure"], "treasure")
    fatness = data.get("fatness_c", 2.0)
    if not isinstance(fatness, (int, float)) or fatness <= 1:
        raise ScenarioError("field 'fatness_c' must be a number > 1")
    strict = data.get("strict", True)
    if not isinstance(strict, bool):
        raise ScenarioError("field 'strict' must be a boolean")
    step = data.get("sight_step")
    if step is not None and (not isinstance(step, (int, float)) or step <= 0):
        raise ScenarioError("field 'sight_step' must be a positive number or null")
    return Scenario(terrain, start, treasure, float(fatness), strict,
                    None if step is None else float(step))


def save_scenario(sc: Scenario, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(scenario_to_dict(sc), fh, indent=2)
        fh.write("\n")


def load_scenario(path: str) -> Scenario:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    return scenario_from_dict(data)
