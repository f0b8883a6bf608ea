"""Planar geometry kernel: polygons, terrains with obstacles, visibility,
boundary walks, and fatness measures.

Conventions
-----------
* Polygons are simple and stored counterclockwise; the constructor accepts
  either orientation and normalizes (duplicate and collinear vertices are
  dropped).
* A Terrain is a closed outer polygon minus the *open* interiors of its
  obstacles, so every boundary point belongs to the terrain.
* All predicates use the absolute tolerance EPS: a point within EPS of a
  boundary counts as being on it.  Generated terrains keep their features
  far above this scale.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional, Sequence

EPS = 1e-9
# Tolerance for "is this point on the ring" queries.  Points that land on a
# ring via chained intersection arithmetic carry more rounding error than raw
# coordinates, so this is looser than EPS but still far below feature sizes.
ON_RING_TOL = 1e-7
# Arc-length slack for boundary-walk stop detection.
ARC_TOL = 1e-9

OUTER_RING = -1  # ring id of the outer boundary (obstacles use their index)


class GeometryError(ValueError):
    pass


class TerrainError(GeometryError):
    pass


class Point(NamedTuple):
    x: float
    y: float


class Location(Enum):
    INTERIOR = "interior"
    ON_BOUNDARY = "on_boundary"
    EXTERIOR = "exterior"


def dist(a: Point, b: Point) -> float:
    return math.hypot(b.x - a.x, b.y - a.y)


def lerp(a: Point, b: Point, t: float) -> Point:
    return Point(a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t)


def cross3(o: Point, a: Point, b: Point) -> float:
    """Twice the signed area of triangle o-a-b (positive = left turn)."""
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def point_segment_distance(p: Point, a: Point, b: Point) -> float:
    dx, dy = b.x - a.x, b.y - a.y
    L2 = dx * dx + dy * dy
    if L2 <= EPS * EPS:
        return math.hypot(p.x - a.x, p.y - a.y)
    t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / L2
    t = 0.0 if t < 0.0 else (1.0 if t > 1.0 else t)
    return math.hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy))


def segments_separated(a: Point, b: Point, c: Point, d: Point, margin: float = EPS) -> bool:
    """True if segments ab and cd provably have no contact.

    Uses the two supporting lines as separating axes with an absolute
    distance margin.  Conservative: may return False for disjoint segments
    in near-degenerate positions.
    """
    abx, aby = b.x - a.x, b.y - a.y
    lab = math.hypot(abx, aby)
    if lab > EPS:
        m = margin * lab
        s0 = abx * (c.y - a.y) - aby * (c.x - a.x)
        s1 = abx * (d.y - a.y) - aby * (d.x - a.x)
        if (s0 > m and s1 > m) or (s0 < -m and s1 < -m):
            return True
    cdx, cdy = d.x - c.x, d.y - c.y
    lcd = math.hypot(cdx, cdy)
    if lcd > EPS:
        m = margin * lcd
        w0 = cdx * (a.y - c.y) - cdy * (a.x - c.x)
        w1 = cdx * (b.y - c.y) - cdy * (b.x - c.x)
        if (w0 > m and w1 > m) or (w0 < -m and w1 < -m):
            return True
    return False


def segments_properly_cross(a: Point, b: Point, c: Point, d: Point, margin: float = EPS) -> bool:
    """True if the open segments cross transversally, away from all endpoints."""
    abx, aby = b.x - a.x, b.y - a.y
    cdx, cdy = d.x - c.x, d.y - c.y
    lab = math.hypot(abx, aby)
    lcd = math.hypot(cdx, cdy)
    if lab <= EPS or lcd <= EPS:
        return False
    ma = margin * lab
    mc = margin * lcd
    s0 = abx * (c.y - a.y) - aby * (c.x - a.x)
    s1 = abx * (d.y - a.y) - aby * (d.x - a.x)
    w0 = cdx * (a.y - c.y) - cdy * (a.x - c.x)
    w1 = cdx * (b.y - c.y) - cdy * (b.x - c.x)
    straddle_cd = (s0 > ma and s1 < -ma) or (s0 < -ma and s1 > ma)
    straddle_ab = (w0 > mc and w1 < -mc) or (w0 < -mc and w1 > mc)
    return straddle_cd and straddle_ab


def segments_touch(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Contact test that also resolves collinear segment pairs exactly.

    Unresolvable near-degenerate cases count as touching (conservative).
    """
    if segments_separated(a, b, c, d):
        return False
    abx, aby = b.x - a.x, b.y - a.y
    lab = math.hypot(abx, aby)
    if lab > EPS:
        dc = abs(abx * (c.y - a.y) - aby * (c.x - a.x)) / lab
        dd = abs(abx * (d.y - a.y) - aby * (d.x - a.x)) / lab
        if dc <= EPS and dd <= EPS:
            tc = ((c.x - a.x) * abx + (c.y - a.y) * aby) / lab
            td = ((d.x - a.x) * abx + (d.y - a.y) * aby) / lab
            lo, hi = min(tc, td), max(tc, td)
            return hi >= -EPS and lo <= lab + EPS
    return True


def segment_segment_distance(a: Point, b: Point, c: Point, d: Point) -> float:
    if segments_properly_cross(a, b, c, d, margin=0.0):
        return 0.0
    return min(
        point_segment_distance(a, c, d),
        point_segment_distance(b, c, d),
        point_segment_distance(c, a, b),
        point_segment_distance(d, a, b),
    )


def convex_hull(points: Sequence[Point]) -> list[Point]:
    """Counterclockwise convex hull (Andrew's monotone chain)."""
    pts = sorted(set((float(p[0]), float(p[1])) for p in points))
    if len(pts) < 3:
        return [Point(*p) for p in pts]
    lower: list[tuple[float, float]] = []
    for p in pts:
        while len(lower) >= 2 and cross3(Point(*lower[-2]), Point(*lower[-1]), Point(*p)) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[tuple[float, float]] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross3(Point(*upper[-2]), Point(*upper[-1]), Point(*p)) <= 0:
            upper.pop()
        upper.append(p)
    return [Point(*p) for p in lower[:-1] + upper[:-1]]


class Polygon:
    """Simple polygon with normalized counterclockwise vertex order."""

    __slots__ = ("vertices", "n", "perimeter", "cum_arc", "area", "_bbox", "_convex")

    def __init__(self, vertices: Sequence):
        verts = [Point(float(v[0]), float(v[1])) for v in vertices]
        for v in verts:
            if not (math.isfinite(v.x) and math.isfinite(v.y)):
                raise GeometryError("polygon vertex has non-finite coordinates")
        verts = _normalize_ring(verts)
        if len(verts) < 3:
            raise GeometryError("polygon needs at least 3 non-degenerate vertices")
        if _signed_area(verts) < 0:
            verts.reverse()
        _check_simple(verts)
        self.vertices: tuple[Point, ...] = tuple(verts)
        self.n = len(verts)
        lens = [dist(verts[i], verts[(i + 1) % self.n]) for i in range(self.n)]
        cum = [0.0]
        for L in lens:
            cum.append(cum[-1] + L)
        self.cum_arc: tuple[float, ...] = tuple(cum)
        self.perimeter = cum[-1]
        self.area = _signed_area(verts)
        xs = [v.x for v in verts]
        ys = [v.y for v in verts]
        self._bbox = (min(xs), min(ys), max(xs), max(ys))
        self._convex: Optional[bool] = None

    @property
    def bbox(self) -> tuple[float, float, float, float]:
        return self._bbox

    def edges(self):
        vs = self.vertices
        for i in range(self.n):
            yield vs[i], vs[(i + 1) % self.n]

    @property
    def is_convex(self) -> bool:
        if self._convex is None:
            vs = self.vertices
            ok = True
            for i in range(self.n):
                o, a, b = vs[i - 1], vs[i], vs[(i + 1) % self.n]
                c = cross3(o, a, b)
                scale = dist(o, a) * dist(a, b)
                if c < -EPS * max(scale, 1.0):
                    ok = False
                    break
            self._convex = ok
        return self._convex

    def point_at_arc(self, s: float) -> Point:
        s = s % self.perimeter
        i = bisect.bisect_right(self.cum_arc, s) - 1
        i = min(i, self.n - 1)
        seg_len = self.cum_arc[i + 1] - self.cum_arc[i]
        t = 0.0 if seg_len <= EPS else (s - self.cum_arc[i]) / seg_len
        return lerp(self.vertices[i], self.vertices[(i + 1) % self.n], t)

    def locate(self, p: Point, tol: float = ON_RING_TOL) -> tuple[int, float]:
        """Edge index and parameter of a point on the ring; raises if off it."""
        best = (tol, -1, 0.0)
        vs = self.vertices
        for i in range(self.n):
            a, b = vs[i], vs[(i + 1) % self.n]
            d = point_segment_distance(p, a, b)
            if d < best[0]:
                L2 = (b.x - a.x) ** 2 + (b.y - a.y) ** 2
                t = 0.0
                if L2 > EPS * EPS:
                    t = ((p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y)) / L2
                    t = min(1.0, max(0.0, t))
                best = (d, i, t)
        if best[1] < 0:
            raise GeometryError("point is not on the ring")
        return best[1], best[2]

    def arc_of_point(self, p: Point, tol: float = ON_RING_TOL) -> float:
        i, t = self.locate(p, tol)
        return (self.cum_arc[i] + t * (self.cum_arc[i + 1] - self.cum_arc[i])) % self.perimeter

    def __repr__(self) -> str:
        return f"Polygon({list(self.vertices)!r})"


def _normalize_ring(verts: list[Point]) -> list[Point]:
    """Drop consecutive duplicates and collinear middle vertices (cyclically)."""
    out = list(verts)
    changed = True
    while changed and len(out) >= 3:
        changed = False
        # duplicates
        kept = []
        for i, v in enumerate(out):
            if dist(v, out[(i + 1) % len(out)]) > EPS:
                kept.append(v)
        if len(kept) != len(out):
            out = kept
            changed = True
            continue
        # collinear middles: v[i] lying on segment v[i-1]..v[i+1]
        kept = []
        n = len(out)
        for i in range(n):
            a, v, b = out[i - 1], out[i], out[(i + 1) % n]
            if point_segment_distance(v, a, b) <= EPS:
                changed = True
                continue
            kept.append(v)
        out = kept
    return out


def _signed_area(verts: Sequence[Point]) -> float:
    s = 0.0
    n = len(verts)
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        s += a.x * b.y - b.x * a.y
    return 0.5 * s


def _check_simple(verts: Sequence[Point]) -> None:
    n = len(verts)
    edges = [(verts[i], verts[(i + 1) % n]) for i in range(n)]
    # adjacent edges must not fold back onto each other
    for i in range(n):
        a, b = edges[i - 1]
        _, c = edges[i]
        e1 = (b.x - a.x, b.y - a.y)
        e2 = (c.x - b.x, c.y - b.y)
        crs = e1[0] * e2[1] - e1[1] * e2[0]
        dot = e1[0] * e2[0] + e1[1] * e2[1]
        if abs(crs) <= EPS * max(1.0, math.hypot(*e1) * math.hypot(*e2)) and dot < 0:
            raise GeometryError("polygon is not simple (fold-back at a vertex)")
    # non-adjacent edges must not touch; spatial hash plus bbox rejection
    # keeps dense rings (combs with thousands of teeth) near-linear
    boxes = []
    for a, b in edges:
        boxes.append((min(a.x, b.x), min(a.y, b.y), max(a.x, b.x), max(a.y, b.y)))
    avg_len = sum(dist(a, b) for a, b in edges) / n
    cell = max(avg_len * 2.0, EPS * 10)
    grid: dict[tuple[int, int], list[int]] = {}
    for i, (x0, y0, x1, y1) in enumerate(boxes):
        for cx in range(int(x0 // cell), int(x1 // cell) + 1):
            for cy in range(int(y0 // cell), int(y1 // cell) + 1):
                grid.setdefault((cx, cy), []).append(i)
    for bucket in grid.values():
        for ii in range(len(bucket)):
            i = bucket[ii]
            ix0, iy0, ix1, iy1 = boxes[i]
            for jj in range(ii + 1, len(bucket)):
                j = bucket[jj]
                jb = boxes[j]
                if (jb[0] > ix1 + EPS or jb[2] < ix0 - EPS
                        or jb[1] > iy1 + EPS or jb[3] < iy0 - EPS):
                    continue
                if j == (i + 1) % n or i == (j + 1) % n:
                    continue
                if segments_touch(*edges[i], *edges[j]):
                    raise GeometryError(
                        f"polygon is not simple (edges {i} and {j} touch)")


class Terrain:
    """Closed outer polygon minus the open interiors of its obstacles.

    Obstacles are open sets: their interiors must lie inside the outer
    polygon's interior (a closure may touch the outer boundary from
    within), and their closures must be pairwise disjoint.  Under those
    conditions the navigable set is automatically connected, so no
    connectivity check is done here.
    """

    __slots__ = ("outer", "obstacles", "boundary_edges", "_cache")

    def __init__(self, outer: Polygon, obstacles: Sequence[Polygon] = ()):
        self.outer = outer
        self.obstacles = tuple(obstacles)
        for i, obs in enumerate(self.obstacles):
            if any(point_in_polygon(v, outer) is Location.EXTERIOR for v in obs.vertices):
                raise TerrainError(f"obstacle {i} is not inside the outer polygon")
            for e in obs.edges():
                for eo in outer.edges():
                    if segments_properly_cross(*e, *eo):
                        raise TerrainError(
                            f"obstacle {i} crosses the outer boundary")
                mid = lerp(e[0], e[1], 0.5)
                if point_in_polygon(mid, outer) is Location.EXTERIOR:
                    raise TerrainError(f"obstacle {i} is not inside the outer polygon")
        for i in range(len(self.obstacles)):
            for j in range(i + 1, len(self.obstacles)):
                a, b = self.obstacles[i], self.obstacles[j]
                if (_ring_distance(a, b) <= EPS
                        or point_in_polygon(a.vertices[0], b) is Location.INTERIOR
                        or point_in_polygon(b.vertices[0], a) is Location.INTERIOR):
                    raise TerrainError(f"obstacles {i} and {j} are not disjoint")
        edges: list[tuple[Point, Point]] = list(outer.edges())
        for obs in self.obstacles:
            edges.extend(obs.edges())
        self.boundary_edges: tuple[tuple[Point, Point], ...] = tuple(edges)
        self._cache: dict = {}

    def ring(self, ring_id: int) -> Polygon:
        return self.outer if ring_id == OUTER_RING else self.obstacles[ring_id]

    def rings(self):
        yield OUTER_RING, self.outer
        for i, obs in enumerate(self.obstacles):
            yield i, obs

    @property
    def bbox(self) -> tuple[float, float, float, float]:
        return self.outer.bbox


def _ring_distance(a: Polygon, b: Polygon) -> float:
    best = math.inf
    for ea in a.edges():
        for eb in b.edges():
            d = segment_segment_distance(*ea, *eb)
            if d < best:
                best = d
                if best == 0.0:
                    return 0.0
    return best


def point_in_polygon(p: Point, poly: Polygon) -> Location:
    x0, y0, x1, y1 = poly.bbox
    if p.x < x0 - EPS or p.x > x1 + EPS or p.y < y0 - EPS or p.y > y1 + EPS:
        return Location.EXTERIOR
    px, py = p.x, p.y
    for a, b in poly.edges():
        if px < a.x - EPS and px < b.x - EPS:
            continue
        if px > a.x + EPS and px > b.x + EPS:
            continue
        if py < a.y - EPS and py < b.y - EPS:
            continue
        if py > a.y + EPS and py > b.y + EPS:
            continue
        if point_segment_distance(p, a, b) <= EPS:
            return Location.ON_BOUNDARY
    # even-odd ray cast; the half-open rule makes vertex hits unambiguous and
    # the boundary case was already handled above
    inside = False
    vs = poly.vertices
    n = poly.n
    for i in range(n):
        a, b = vs[i], vs[(i + 1) % n]
        if (a.y > p.y) != (b.y > p.y):
            xint = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y)
            if p.x < xint:
                inside = not inside
    return Location.INTERIOR if inside else Location.EXTERIOR


def point_in_terrain(p: Point, t: Terrain) -> bool:
    loc = point_in_polygon(p, t.outer)
    if loc is Location.EXTERIOR:
        return False
    if loc is Location.ON_BOUNDARY:
        return True
    for obs in t.obstacles:
        loc = point_in_polygon(p, obs)
        if loc is Location.INTERIOR:
            return False
        if loc is Location.ON_BOUNDARY:
            return True
    return True


def _segment_boundary_params(a: Point, b: Point, t: Terrain) -> list[float]:
    """Sorted parameters in [0,1] where segment ab meets any boundary edge.

    Collinear overlaps contribute both overlap endpoints.  Always contains
    0 and 1, deduplicated.
    """
    dx, dy = b.x - a.x, b.y - a.y
    L = math.hypot(dx, dy)
    if L <= EPS:
        return [0.0, 1.0]
    sx0, sx1 = min(a.x, b.x) - EPS, max(a.x, b.x) + EPS
    sy0, sy1 = min(a.y, b.y) - EPS, max(a.y, b.y) + EPS
    tol_t = EPS / L
    ts = [0.0, 1.0]
    for u, v in t.boundary_edges:
        if max(u.x, v.x) < sx0 or min(u.x, v.x) > sx1 or max(u.y, v.y) < sy0 or min(u.y, v.y) > sy1:
            continue
        ex, ey = v.x - u.x, v.y - u.y
        Le = math.hypot(ex, ey)
        denom = dx * ey - dy * ex
        if abs(denom) > 1e-12 * L * Le:
            wx, wy = u.x - a.x, u.y - a.y
            tt = (wx * ey - wy * ex) / denom
            ss = (wx * dy - wy * dx) / denom
            if -tol_t <= tt <= 1.0 + tol_t and -EPS / Le <= ss <= 1.0 + EPS / Le:
                ts.append(min(1.0, max(0.0, tt)))
        else:
            # parallel; collinear overlap only when the lines coincide
            if abs((u.x - a.x) * dy - (u.y - a.y) * dx) / L <= EPS:
                tu = ((u.x - a.x) * dx + (u.y - a.y) * dy) / (L * L)
                tv = ((v.x - a.x) * dx + (v.y - a.y) * dy) / (L * L)
                lo, hi = min(tu, tv), max(tu, tv)
                if hi >= -tol_t and lo <= 1.0 + tol_t:
                    ts.append(min(1.0, max(0.0, lo)))
                    ts.append(min(1.0, max(0.0, hi)))
    ts.sort()
    out = [ts[0]]
    for v in ts[1:]:
        if v - out[-1] > 1e-12:
            out.append(v)
    return out


def segment_in_terrain(a: Point, b: Point, t: Terrain) -> bool:
    """True iff every point of segment ab lies in the terrain.

    Segments riding along boundaries count as contained: the interval
    midpoints between boundary events land on the boundary, which belongs
    to the terrain.
    """
    if not point_in_terrain(a, t) or not point_in_terrain(b, t):
        return False
    if dist(a, b) <= EPS:
        return True
    ts = _segment_boundary_params(a, b, t)
    for i in range(len(ts) - 1):
        mid = lerp(a, b, 0.5 * (ts[i] + ts[i + 1]))
        if not point_in_terrain(mid, t):
            return False
    return True


def sees(p: Point, q: Point, t: Terrain) -> bool:
    """Mutual visibility: |pq| <= 1 and the segment stays in the terrain."""
    if not point_in_terrain(p, t) or not point_in_terrain(q, t):
        raise GeometryError("sees() requires both points inside the terrain")
    if dist(p, q) > 1.0 + EPS:
        return False
    return segment_in_terrain(p, q, t)


class HitEvent(NamedTuple):
    point: Point
    ring: int  # OUTER_RING or obstacle index
    travel: float


def first_hit(frm: Point, toward: Point, t: Terrain) -> Optional[HitEvent]:
    """First point along segment frm->toward where continuing would leave
    the terrain (enter an obstacle interior or exit the outer polygon).

    Tangential touches and stretches riding along a boundary do not count.
    Returns None when the whole segment stays navigable.
    """
    if not point_in_terrain(frm, t):
        raise GeometryError("free move must start inside the terrain")
    L = dist(frm, toward)
    if L <= EPS:
        return None
    ts = _segment_boundary_params(frm, toward, t)
    for i in range(len(ts) - 1):
        mid = lerp(frm, toward, 0.5 * (ts[i] + ts[i + 1]))
        if point_in_terrain(mid, t):
            continue
        hp = lerp(frm, toward, ts[i])
        ring = OUTER_RING
        for k, obs in enumerate(t.obstacles):
            if point_in_polygon(mid, obs) is Location.INTERIOR:
                ring = k
                break
        return HitEvent(hp, ring, ts[i] * L)
    return None


def line_ring_intersections(a: Point, b: Point, ring: Polygon) -> list[tuple[Point, bool]]:
    """Intersections of the infinite line through a,b with a ring.

    Each entry is (point, crossing): crossing=True when the ring passes
    from one side of the line to the other there, False for tangential
    contact.  A contact stretch collinear with the line contributes its two
    endpoints.  Results are ordered along the a->b direction.
    """
    dx, dy = b.x - a.x, b.y - a.y
    L = math.hypot(dx, dy)
    if L <= EPS:
        raise GeometryError("line requires two distinct points")
    vs = ring.vertices
    n = ring.n
    sigma = []
    for v in vs:
        s = dx * (v.y - a.y) - dy * (v.x - a.x)
        sigma.append(0.0 if abs(s) <= EPS * L else s)
    if all(s == 0.0 for s in sigma):
        raise GeometryError("degenerate ring: all vertices on the line")

    events: list[tuple[float, Point, bool]] = []

    def param(p: Point) -> float:
        return ((p.x - a.x) * dx + (p.y - a.y) * dy) / (L * L)

    # transversal crossings strictly inside edges
    for i in range(n):
        s0, s1 = sigma[i], sigma[(i + 1) % n]
        if s0 != 0.0 and s1 != 0.0 and (s0 > 0) != (s1 > 0):
            t = s0 / (s0 - s1)
            p = lerp(vs[i], vs[(i + 1) % n], t)
            events.append((param(p), p, True))

    # vertex-contact runs (single vertices or chains of collinear edges)
    zero_idx = [i for i in range(n) if sigma[i] == 0.0]
    if zero_idx:
        zset = set(zero_idx)
        runs: list[list[int]] = []
        for i in zero_idx:
            if (i - 1) % n in zset:
                continue  # not a run start
            run = [i]
            j = (i + 1) % n
            while j in zset and j != i:
                run.append(j)
                j = (j + 1) % n
            runs.append(run)
        for run in runs:
            before = sigma[(run[0] - 1) % n]
            after = sigma[(run[-1] + 1) % n]
            crossing = (before > 0) != (after > 0)
            first, last = vs[run[0]], vs[run[-1]]
            events.append((param(first), first, crossing))
            if len(run) > 1:
                events.append((param(last), last, crossing))

    events.sort(key=lambda e: e[0])
    return [(p, c) for _, p, c in events]


@dataclass(frozen=True)
class BoundaryCursor:
    """Position on a ring: arc offset from vertex 0 plus a traversal sense.

    direction +1 follows the stored (counterclockwise) vertex order, -1 the
    reverse.
    """
    ring: Polygon
    arc: float
    direction: int

    @property
    def position(self) -> tuple[int, float]:
        i = bisect.bisect_right(self.ring.cum_arc, self.arc % self.ring.perimeter) - 1
        i = min(i, self.ring.n - 1)
        seg = self.ring.cum_arc[i + 1] - self.ring.cum_arc[i]
        t = 0.0 if seg <= EPS else (self.arc % self.ring.perimeter - self.ring.cum_arc[i]) / seg
        return i, t

    @property
    def point(self) -> Point:
        return self.ring.point_at_arc(self.arc)


def march(ring: Polygon, start_arc: float, length: float, direction: int) -> list[Point]:
    """Polyline along the ring boundary from an arc position.

    Includes both endpoints and every vertex passed; wraps around the ring
    as many times as the length requires.
    """
    P = ring.perimeter
    cum = ring.cum_arc
    n = ring.n
    arc = start_arc % P
    pts = [ring.point_at_arc(arc)]
    remaining = length
    i = min(bisect.bisect_right(cum, arc) - 1, n - 1)
    if direction < 0 and arc - cum[i] <= 1e-12:
        # sitting on the start of edge i: walking backward means edge i-1
        i = (i - 1) % n
        arc = cum[i + 1]
    while remaining > 1e-12:
        if direction > 0:
            room = cum[i + 1] - arc
            step = min(room, remaining)
            arc += step
        else:
            room = arc - cum[i]
            step = min(room, remaining)
            arc -= step
        remaining -= step
        if step > 1e-12:
            pts.append(ring.point_at_arc(arc % P))
        if remaining > 1e-12:
            if direction > 0:
                i = (i + 1) % n
                arc = cum[i]
            else:
                i = (i - 1) % n
                arc = cum[i + 1]
    return pts


def walk_boundary(cursor: BoundaryCursor, distance: float,
                  stop: Optional[Point] = None) -> tuple[BoundaryCursor, list[Point], bool]:
    """Advance along the ring, optionally halting when the walk covers `stop`.

    Returns the new cursor, the walked polyline, and whether `stop` was
    reached.  The polyline's arc length equals min(distance, arc to stop).
    A stop coinciding with the start position is reached immediately.
    """
    if distance < 0:
        raise GeometryError("walk distance must be nonnegative")
    ring = cursor.ring
    P = ring.perimeter
    walk_len = distance
    reached = False
    if stop is not None:
        stop_arc = ring.arc_of_point(stop)  # raises if not on ring
        d_stop = (stop_arc - cursor.arc) * cursor.direction % P
        if d_stop <= distance + ARC_TOL:
            walk_len = min(distance, d_stop)
            reached = True
    pts = march(ring, cursor.arc, walk_len, cursor.direction)
    new_cursor = BoundaryCursor(ring, (cursor.arc + cursor.direction * walk_len) % P,
                                cursor.direction)
    return new_cursor, pts, reached


def perimeter_split(ring: Polygon, a: Point, b: Point) -> tuple[float, float]:
    """The two arc lengths between ring points a and b, smaller first."""
    pa = ring.arc_of_point(a)
    pb = ring.arc_of_point(b)
    d = (pb - pa) % ring.perimeter
    return (d, ring.perimeter - d) if d <= ring.perimeter - d else (ring.perimeter - d, d)


def distance_to_boundary(p: Point, t: Terrain) -> float:
    """Distance from a terrain point to the nearest boundary segment."""
    if not point_in_terrain(p, t):
        raise GeometryError("point is outside the terrain")
    return min(point_segment_distance(p, a, b) for a, b in t.boundary_edges)


def _circle_from2(a: Point, b: Point) -> tuple[Point, float]:
    c = Point(0.5 * (a.x + b.x), 0.5 * (a.y + b.y))
    return c, max(dist(c, a), dist(c, b))


def _circle_from3(a: Point, b: Point, c: Point) -> Optional[tuple[Point, float]]:
    d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y))
    if abs(d) < 1e-14 * max(1.0, dist(a, b) * dist(b, c)):
        return None
    ax2, bx2, cx2 = a.x ** 2 + a.y ** 2, b.x ** 2 + b.y ** 2, c.x ** 2 + c.y ** 2
    ux = (ax2 * (b.y - c.y) + bx2 * (c.y - a.y) + cx2 * (a.y - b.y)) / d
    uy = (ax2 * (c.x - b.x) + bx2 * (a.x - c.x) + cx2 * (b.x - a.x)) / d
    ctr = Point(ux, uy)
    return ctr, max(dist(ctr, a), dist(ctr, b), dist(ctr, c))


def _in_circle(circle: Optional[tuple[Point, float]], p: Point) -> bool:
    if circle is None:
        return False
    c, r = circle
    return dist(c, p) <= r * (1.0 + 1e-12) + 1e-14


def _trivial_circle(boundary: list[Point]) -> Optional[tuple[Point, float]]:
    if not boundary:
        return None
    if len(boundary) == 1:
        return boundary[0], 0.0
    if len(boundary) == 2:
        return _circle_from2(*boundary)
    for i in range(3):
        for j in range(i + 1, 3):
            c = _circle_from2(boundary[i], boundary[j])
            if all(_in_circle(c, q) for q in boundary):
                return c
    return _circle_from3(*boundary)


def smallest_enclosing_circle(poly: Polygon) -> tuple[Point, float]:
    """Minimal circle containing the polygon (Welzl over the vertex set;
    enclosing a convex polygon equals enclosing its vertices)."""
    import random as _random
    pts = list(poly.vertices)
    _random.Random(0x5EC).shuffle(pts)

    def welzl(i: int, boundary: list[Point]) -> Optional[tuple[Point, float]]:
        if i == len(pts) or len(boundary) == 3:
            return _trivial_circle(boundary)
        c = welzl(i + 1, boundary)
        if c is not None and _in_circle(c, pts[i]):
            return c
        return welzl(i + 1, boundary + [pts[i]])

    circle = welzl(0, [])
    assert circle is not None
    return circle


def largest_inscribed_circle(poly: Polygon) -> tuple[Point, float]:
    """Chebyshev center and radius of a convex polygon.

    Solved by enumerating edge-line triples: some optimum of the underlying
    linear program is determined by three active edge constraints.
    """
    if not poly.is_convex:
        raise GeometryError("largest_inscribed_circle requires a convex polygon")
    normals = []
    for a, b in poly.edges():
        ex, ey = b.x - a.x, b.y - a.y
        L = math.hypot(ex, ey)
        nx, ny = -ey / L, ex / L  # inward for a CCW ring
        normals.append((nx, ny, nx * a.x + ny * a.y))
    m = len(normals)
    best: Optional[tuple[float, Point]] = None
    for i in range(m):
        for j in range(i + 1, m):
            for k in range(j + 1, m):
                rows = (normals[i], normals[j], normals[k])
                det = _det3(rows)
                if abs(det) < 1e-12:
                    continue
                x = _det3_col(rows, 0) / det
                y = _det3_col(rows, 1) / det
                r = _det3_col(rows, 2) / det
                if r < -EPS:
                    continue
                if all(nx * x + ny * y - o >= r - 1e-9 for nx, ny, o in normals):
                    if best is None or r > best[0]:
                        best = (r, Point(x, y))
    if best is None:
        raise GeometryError("inscribed circle search failed (degenerate polygon)")
    return best[1], best[0]


def _det3(rows) -> float:
    (a1, b1, _), (a2, b2, _), (a3, b3, _) = rows
    # unknowns (x, y, r): rows are [nx, ny, -1 | o]
    return (a1 * (b2 * (-1) - (-1) * b3)
            - b1 * (a2 * (-1) - (-1) * a3)
            + (-1) * (a2 * b3 - b2 * a3))


def _det3_col(rows, col: int) -> float:
    mat = [[r[0], r[1], -1.0] for r in rows]
    rhs = [r[2] for r in rows]
    for i in range(3):
        mat[i][col] = rhs[i]
    (a1, b1, c1), (a2, b2, c2), (a3, b3, c3) = mat
    return a1 * (b2 * c3 - c2 * b3) - b1 * (a2 * c3 - c2 * a3) + c1 * (a2 * b3 - b2 * a3)


def is_c_fat(poly: Polygon, c: float) -> bool:
    """Enclosing-to-inscribed radius ratio at most c."""
    if c <= 1:
        raise GeometryError("fatness parameter must exceed 1")
    _, R = smallest_enclosing_circle(poly)
    _, r = largest_inscribed_circle(poly)
    return R <= c * r + EPS


@dataclass(frozen=True)
class RegularityReport:
    ok: bool
    reason: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


def validate_regular_terrain(t: Terrain, c: float) -> RegularityReport:
    """Convex outer polygon with convex c-fat obstacles."""
    if c <= 1:
        raise GeometryError("fatness parameter must exceed 1")
    if not t.outer.is_convex:
        return RegularityReport(False, "outer polygon is not convex")
    for i, obs in enumerate(t.obstacles):
        if not obs.is_convex:
            return RegularityReport(False, f"obstacle {i} is not convex")
        if not is_c_fat(obs, c):
            _, R = smallest_enclosing_circle(obs)
            _, r = largest_inscribed_circle(obs)
            return RegularityReport(
                False, f"obstacle {i} is not {c}-fat (R/r = {R / r:.3f})")
    return RegularityReport(True)


def direction_probe(poly: Polygon, vertex_index: int, d: Point) -> str:
    """Classify direction d leaving vertex `vertex_index`: 'interior',
    'exterior', or 'boundary' (collinear with an incident edge)."""
    vs = poly.vertices
    u = vs[vertex_index]
    a = vs[vertex_index - 1]
    b = vs[(vertex_index + 1) % poly.n]
    ein = Point(u.x - a.x, u.y - a.y)
    eout = Point(b.x - u.x, b.y - u.y)
    ld = math.hypot(d.x, d.y)
    ca = eout.x * d.y - eout.y * d.x
    cb = ein.x * d.y - ein.y * d.x
    ma = EPS * math.hypot(eout.x, eout.y) * ld
    mb = EPS * math.hypot(ein.x, ein.y) * ld
    if abs(ca) <= ma or abs(cb) <= mb:
        return "boundary"
    convex = ein.x * eout.y - ein.y * eout.x > 0
    inside = (ca > 0 and cb > 0) if convex else (ca > 0 or cb > 0)
    return "interior" if inside else "exterior"
