"""Advice-only side: the hunting agent.

The agent decodes the advice triple, rebuilds the tiling anchored at its
start point, and free-moves along the line toward the designated tile
center.  Every time the move is interrupted by an obstacle it runs a
doubling (cow-path) search along the obstacle perimeter for the point
where the line re-crosses it, then continues.  The simulator additionally
records when the treasure first became visible; the agent itself never
uses the treasure position.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple, Optional

from .codec import AdviceError, decode
from .geom import (ARC_TOL, EPS, OUTER_RING, GeometryError, Point, Polygon,
                   Terrain, dist, distance_to_boundary, first_hit, lerp,
                   line_ring_intersections, march, point_in_terrain, sees)
from .oracle import TileIndex, Tiling

NORTH = Point(0.0, 1.0)


class MoveKind(Enum):
    FREE_MOVE = "free_move"
    PERIMETER_WALK = "perimeter_walk"


class TrajectoryPiece(NamedTuple):
    points: tuple[Point, ...]
    kind: MoveKind
    length: float


@dataclass
class Trajectory:
    pieces: list[TrajectoryPiece] = field(default_factory=list)
    total_length: float = 0.0

    def append(self, points: list[Point], kind: MoveKind) -> None:
        if len(points) < 2:
            return
        L = sum(dist(points[i], points[i + 1]) for i in range(len(points) - 1))
        if L <= 1e-15:
            return
        if self.pieces and dist(self.pieces[-1].points[-1], points[0]) > 1e-6:
            raise GeometryError("trajectory pieces must share endpoints")
        self.pieces.append(TrajectoryPiece(tuple(points), kind, L))
        self.total_length += L

    @property
    def end(self) -> Optional[Point]:
        return self.pieces[-1].points[-1] if self.pieces else None

    def point_at(self, arc: float) -> Point:
        if arc <= 0 or not self.pieces:
            return self.pieces[0].points[0] if self.pieces else Point(math.nan, math.nan)
        s = arc
        for piece in self.pieces:
            if s <= piece.length + 1e-12:
                pts = piece.points
                for i in range(len(pts) - 1):
                    seg = dist(pts[i], pts[i + 1])
                    if s <= seg + 1e-12:
                        return lerp(pts[i], pts[i + 1], 0.0 if seg == 0 else min(1.0, s / seg))
                    s -= seg
                return pts[-1]
            s -= piece.length
        return self.pieces[-1].points[-1]


class CowPathStats(NamedTuple):
    ring: int
    dmin: float
    walked: float


@dataclass
class HuntOutcome:
    trajectory: Trajectory
    reached_qprime: bool
    first_sight_length: Optional[float]
    total_length: float
    q_prime: Point
    cowpath: list[CowPathStats]


def choose_directions(ring: Polygon, r: Point, north: Point = NORTH) -> tuple[int, int]:
    """Traversal senses (dir1, dir2) for a perimeter search starting at r.

    At a vertex, dir1 follows the adjacent side whose outgoing direction
    makes the smaller angle with `north` (ties go to the smaller clockwise
    bearing from north).  Inside a side, dir1 heads West if the side is
    horizontal and otherwise into the northern half-plane through r.
    Senses are +1 (stored counterclockwise order) / -1.
    """
    i, _ = ring.locate(r)
    vs = ring.vertices
    n = ring.n
    nn = math.hypot(north.x, north.y)
    if nn <= EPS:
        raise GeometryError("north direction must be a nonzero vector")
    west = Point(-north.y / nn, north.x / nn)

    at_vertex = None
    if dist(r, vs[i]) <= 1e-7:
        at_vertex = i
    elif dist(r, vs[(i + 1) % n]) <= 1e-7:
        at_vertex = (i + 1) % n

    if at_vertex is not None:
        v = vs[at_vertex]
        fwd = vs[(at_vertex + 1) % n]   # sense +1
        back = vs[at_vertex - 1]        # sense -1
        cands = []
        for sense, other in ((1, fwd), (-1, back)):
            dx, dy = other.x - v.x, other.y - v.y
            L = math.hypot(dx, dy)
            cosang = (dx * north.x + dy * north.y) / (L * nn)
            bearing = math.atan2(dx * -west.x + dy * -west.y, dx * north.x / nn + dy * north.y / nn)
            if bearing < 0:
                bearing += 2 * math.pi
            cands.append((sense, cosang, bearing))
        (s1, c1, b1), (s2, c2, b2) = cands
        if abs(c1 - c2) > 1e-12:
            dir1 = s1 if c1 > c2 else s2
        else:
            dir1 = s1 if b1 <= b2 else s2
        return dir1, -dir1

    a, b = vs[i], vs[(i + 1) % n]
    ex, ey = b.x - a.x, b.y - a.y
    L = math.hypot(ex, ey)
    along_north = (ex * north.x + ey * north.y) / nn
    if abs(along_north) <= EPS * L:  # horizontal side: head West
        dir1 = 1 if (ex * west.x + ey * west.y) > 0 else -1
    else:
        dir1 = 1 if along_north > 0 else -1
    return dir1, -dir1


def cow_path(ring: Polygon, m_a: Point, m_b: Point, r: Point,
             trajectory: Trajectory, north: Point = NORTH) -> tuple[Point, CowPathStats]:
    """Doubling perimeter search from crossing point r for the other
    crossing point of line (m_a, m_b) with the ring.

    Walks legs of length 1, 2, 4, ... alternating dir1/dir2 (returning to r
    after each failed leg), appending every walked piece to the trajectory.
    Returns the found point and (dmin, walked) statistics.
    """
    events = line_ring_intersections(m_a, m_b, ring)
    crossings = [pt for pt, crossing in events if crossing]
    if len(crossings) < 2:
        raise GeometryError("line does not cross the ring twice (tangential contact?)")
    dxm, dym = m_b.x - m_a.x, m_b.y - m_a.y
    L2 = dxm * dxm + dym * dym

    def along(pt: Point) -> float:
        return ((pt.x - m_a.x) * dxm + (pt.y - m_a.y) * dym) / L2

    r_par = along(r)
    by_dist = sorted(crossings, key=lambda c: dist(c, r))
    if dist(by_dist[0], r) > 1e-6:
        raise GeometryError("start point is not a crossing of the line with the ring")
    ahead = [c for c in crossings if along(c) > r_par + 1e-9]
    if not ahead:
        raise GeometryError("no crossing beyond the hit point toward the target")
    r_prime = min(ahead, key=along)

    P = ring.perimeter
    arc_r = ring.arc_of_point(r)
    arc_rp = ring.arc_of_point(r_prime)
    dir1, dir2 = choose_directions(ring, r, north)
    d_fwd = (arc_rp - arc_r) * dir1 % P  # distance to r' going dir1
    dmin = min(d_fwd, P - d_fwd)

    walked = 0.0
    leg = 1.0
    sense = dir1
    while True:
        target = d_fwd if sense == dir1 else P - d_fwd
        if target <= leg + ARC_TOL:
            pts = march(ring, arc_r, target, sense)
            pts[-1] = r_prime  # exact landing, no arc rounding
            trajectory.append(pts, MoveKind.PERIMETER_WALK)
            walked += target
            break
        out = march(ring, arc_r, leg, sense)
        trajectory.append(out, MoveKind.PERIMETER_WALK)
        trajectory.append(list(reversed(out)), MoveKind.PERIMETER_WALK)
        walked += 2 * leg
        leg *= 2
        sense = dir2 if sense == dir1 else dir1
    return r_prime, CowPathStats(OUTER_RING, dmin, walked)


def _all_convex(t: Terrain) -> bool:
    return t.outer.is_convex and all(o.is_convex for o in t.obstacles)


def thunt(t: Terrain, p: Point, advice: str, treasure: Optional[Point] = None,
          strict: bool = True, sight_step: Optional[float] = None) -> HuntOutcome:
    """Execute the hunt from p using only the advice string.

    With `strict` the terrain must be regular (convex outer polygon and
    convex obstacles); without it the agent still targets the next line
    crossing on whatever ring it hits, with no cost guarantees.  When the
    simulator is given the treasure position it reports the arc length at
    which the treasure first became visible.
    """
    if not point_in_terrain(p, t):
        raise GeometryError("agent start must lie in the terrain")
    if strict and not _all_convex(t):
        raise GeometryError("strict mode requires a regular terrain "
                            "(convex outer polygon and convex obstacles)")
    a1, a2, a3 = decode(advice)
    if a1 <= 0:
        raise AdviceError("decoded grid density must be positive")
    tiling = Tiling(p, 1.0 / a1)
    q_prime = tiling.tile_center(TileIndex(a2, a3))
    if not point_in_terrain(q_prime, t):
        raise AdviceError("advice points outside the terrain (corrupt advice?)")

    traj = Trajectory()
    stats: list[CowPathStats] = []
    pos = p
    guard = 0
    while dist(pos, q_prime) > EPS:
        guard += 1
        if guard > 1000:
            raise GeometryError("hunt failed to make progress (non-regular terrain?)")
        hit = first_hit(pos, q_prime, t)
        if hit is None:
            traj.append([pos, q_prime], MoveKind.FREE_MOVE)
            pos = q_prime
            break
        if hit.travel > EPS:
            traj.append([pos, hit.point], MoveKind.FREE_MOVE)
        ring = t.ring(hit.ring)
        r_prime, st = cow_path(ring, p, q_prime, hit.point, traj)
        stats.append(CowPathStats(hit.ring, st.dmin, st.walked))
        pos = r_prime

    first_sight = None
    if treasure is not None:
        step = sight_step
        if step is None:
            lam = min(1.0, distance_to_boundary(treasure, t))
            step = max(lam, EPS) / 8.0
        first_sight = _first_sight_length(traj, p, treasure, t, step)
    return HuntOutcome(traj, True, first_sight, traj.total_length, q_prime, stats)


def _first_sight_length(traj: Trajectory, start: Point, q: Point, t: Terrain,
                        step: float) -> Optional[float]:
    """Arc length at which the treasure first becomes visible.

    Samples the trajectory at every piece vertex plus a fixed arc step and
    bisects inside the first visible bracket to 1e-6.
    """
    def visible(pt: Point) -> bool:
        if dist(pt, q) > 1.0 + EPS:
            return False
        return sees(pt, q, t)

    if visible(start):
        return 0.0
    prev_arc = 0.0
    base = 0.0
    for piece in traj.pieces:
        pts = piece.points
        local = 0.0
        for i in range(len(pts) - 1):
            seg = dist(pts[i], pts[i + 1])
            k = 1
            while True:
                s = min(k * step, seg)
                pt = lerp(pts[i], pts[i + 1], s / seg) if seg > 0 else pts[i]
                arc = base + local + s
                if visible(pt):
                    return _bisect_sight(traj, prev_arc, arc, q, t)
                prev_arc = arc
                if s >= seg:
                    break
                k += 1
            local += seg
        base += piece.length
    return None


def _bisect_sight(traj: Trajectory, lo: float, hi: float, q: Point, t: Terrain) -> float:
    while hi - lo > 1e-6:
        mid = 0.5 * (lo + hi)
        pt = traj.point_at(mid)
        if dist(pt, q) <= 1.0 + EPS and sees(pt, q, t):
            hi = mid
        else:
            lo = mid
    return hi
