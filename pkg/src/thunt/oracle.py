"""Full-knowledge side: treasure accessibility, target-tile selection,
advice construction, and ground-truth shortest paths.

The shortest path runs over the visibility graph of the terrain (start,
treasure, and all polygon vertices; edges admitted iff the connecting
segment stays inside the terrain).  An independent lattice oracle with
8-neighbor connectivity cross-checks it from above.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from . import vecgeom
from .codec import encode
from .geom import (EPS, OUTER_RING, GeometryError, Point, Terrain, dist,
                   distance_to_boundary, direction_probe, point_in_terrain,
                   segment_in_terrain)


class GridResolutionError(RuntimeError):
    pass


class TreasureSpec(NamedTuple):
    q: Point
    rho: float
    lam: float


class TileIndex(NamedTuple):
    col: int
    row: int


@dataclass(frozen=True)
class Tiling:
    """Square grid anchored at the agent start.

    Columns count +1, +2, ... going East of the anchor and -1, -2, ...
    going West; rows likewise North/South.  There is no column or row 0.
    Internally a signed index maps to grid cell k (cell spans
    [anchor + k*side, anchor + (k+1)*side]) via k = idx-1 for idx >= 1 and
    k = idx for idx <= -1.
    """
    anchor: Point
    side: float

    @staticmethod
    def cell_of(index: int) -> int:
        if index == 0:
            raise GeometryError("tile indices are nonzero by convention")
        return index - 1 if index > 0 else index

    @staticmethod
    def index_of(cell: int) -> int:
        return cell + 1 if cell >= 0 else cell

    def tile_center(self, idx: TileIndex) -> Point:
        kx = self.cell_of(idx.col)
        ky = self.cell_of(idx.row)
        return Point(self.anchor.x + (kx + 0.5) * self.side,
                     self.anchor.y + (ky + 0.5) * self.side)

    def tile_corners(self, idx: TileIndex) -> list[Point]:
        kx = self.cell_of(idx.col)
        ky = self.cell_of(idx.row)
        x0 = self.anchor.x + kx * self.side
        y0 = self.anchor.y + ky * self.side
        s = self.side
        return [Point(x0, y0), Point(x0 + s, y0), Point(x0 + s, y0 + s), Point(x0, y0 + s)]


def accessibility(t: Terrain, q: Point) -> TreasureSpec:
    """Largest boundary clearance rho and visibility radius lam = min(1, rho)."""
    if not point_in_terrain(q, t):
        raise GeometryError("treasure must lie inside the terrain")
    rho = distance_to_boundary(q, t)
    if rho <= EPS:
        raise GeometryError("treasure must be an interior point of the terrain")
    return TreasureSpec(q, rho, min(1.0, rho))


# Relative shrink applied to the tile-containment disc.  lam may be
# irrational (distance to a slanted edge); testing containment against the
# slightly smaller disc keeps every selected tile inside the true one at
# the cost of at most one extra advice bit.
DISC_SHRINK = 1e-6


def select_tile(t: Terrain, p: Point, spec: TreasureSpec) -> tuple[int, TileIndex, Point]:
    """Pick the target tile: grid density a1 = ceil(2/lam), then the tile
    fully inside the treasure disc with the smallest row index, breaking
    ties by the smallest column index.  Returns (a1, index, tile center)."""
    lam = spec.lam
    a1 = max(1, math.ceil(2.0 / lam - 1e-9))
    side = 1.0 / a1
    tiling = Tiling(p, side)
    r_hat = lam * (1.0 - DISC_SHRINK)
    q = spec.q

    kx_lo = math.floor((q.x - r_hat - p.x) / side) - 1
    kx_hi = math.ceil((q.x + r_hat - p.x) / side) + 1
    ky_lo = math.floor((q.y - r_hat - p.y) / side) - 1
    ky_hi = math.ceil((q.y + r_hat - p.y) / side) + 1

    best: Optional[tuple[int, int]] = None  # (row index, col index)
    r2 = r_hat * r_hat
    for ky in range(ky_lo, ky_hi + 1):
        row = Tiling.index_of(ky)
        if best is not None and row > best[0]:
            continue
        y0 = p.y + ky * side
        dy = max(abs(y0 - q.y), abs(y0 + side - q.y))
        for kx in range(kx_lo, kx_hi + 1):
            x0 = p.x + kx * side
            dx = max(abs(x0 - q.x), abs(x0 + side - q.x))
            if dx * dx + dy * dy <= r2:
                col = Tiling.index_of(kx)
                key = (row, col)
                if best is None or key < best:
                    best = key
    if best is None:
        raise GeometryError("no tile fits in the treasure disc (should be impossible)")
    idx = TileIndex(best[1], best[0])
    return a1, idx, tiling.tile_center(idx)


def make_advice(t: Terrain, p: Point, q: Point) -> str:
    """Advice string steering an agent at p to a point that sees q."""
    if not point_in_terrain(p, t):
        raise GeometryError("start point must lie in the terrain")
    spec = accessibility(t, q)
    a1, idx, _ = select_tile(t, p, spec)
    return encode(a1, idx.col, idx.row)


def _visibility_nodes(t: Terrain, extra: list[Point]):
    nodes: list[Point] = list(extra)
    meta: list[Optional[tuple[int, int]]] = [None] * len(extra)  # (ring id, vertex idx)
    for rid, ring in t.rings():
        for vi in range(ring.n):
            nodes.append(ring.vertices[vi])
            meta.append((rid, vi))
    return nodes, meta


def _incident_edge_ids(t: Terrain, meta) -> np.ndarray:
    """Global boundary-edge ids incident to each node (-1 = none)."""
    ring_offsets = {}
    off = 0
    for rid, ring in t.rings():
        ring_offsets[rid] = off
        off += ring.n
    inc = np.full((len(meta), 2), -1, dtype=int)
    for i, m in enumerate(meta):
        if m is None:
            continue
        rid, vi = m
        ring = t.ring(rid)
        base = ring_offsets[rid]
        inc[i, 0] = base + (vi - 1) % ring.n
        inc[i, 1] = base + vi
    return inc


def _visibility_graph(t: Terrain, p: Point, q: Point):
    nodes, meta = _visibility_nodes(t, [p, q])
    V = len(nodes)
    P = np.array(nodes, dtype=float)
    iu, ju = np.triu_indices(V, k=1)
    K = len(iu)
    M = len(t.boundary_edges)

    inc_ids = _incident_edge_ids(t, meta)
    incident = np.zeros((K, M), dtype=bool)
    rows = np.arange(K)
    for side in (iu, ju):
        for c in range(2):
            ids = inc_ids[side, c]
            ok = ids >= 0
            incident[rows[ok], ids[ok]] = True

    blocked, ambiguous = vecgeom.pairwise_edge_classification(P, iu, ju, t, incident)

    ring_offsets = {}
    off = 0
    for rid, ring in t.rings():
        ring_offsets[rid] = off
        off += ring.n

    admitted_i: list[int] = []
    admitted_j: list[int] = []
    weights: list[float] = []
    for k in range(K):
        i, j = int(iu[k]), int(ju[k])
        a, b = nodes[i], nodes[j]
        mi, mj = meta[i], meta[j]
        # a ring's own boundary edge is always navigable
        if mi is not None and mj is not None and mi[0] == mj[0]:
            ring = t.ring(mi[0])
            if (mi[1] - mj[1]) % ring.n in (1, ring.n - 1):
                admitted_i.append(i)
                admitted_j.append(j)
                weights.append(dist(a, b))
                continue
        if blocked[k]:
            continue
        if ambiguous[k]:
            ok = segment_in_terrain(a, b, t)
        else:
            ok = True
            for node_meta, src, dst in ((mi, a, b), (mj, b, a)):
                if node_meta is None:
                    continue
                rid, vi = node_meta
                ring = t.ring(rid)
                probe = direction_probe(ring, vi, Point(dst.x - src.x, dst.y - src.y))
                if probe == "boundary":
                    ok = segment_in_terrain(a, b, t)
                    break
                entering_interior = probe == "interior"
                if rid == OUTER_RING:
                    if not entering_interior:  # leaves the outer polygon
                        ok = False
                        break
                elif entering_interior:  # dives into an obstacle
                    ok = False
                    break
            else:
                mid = Point(0.5 * (a.x + b.x), 0.5 * (a.y + b.y))
                ok = point_in_terrain(mid, t)
        if ok:
            admitted_i.append(i)
            admitted_j.append(j)
            weights.append(dist(a, b))
    return nodes, admitted_i, admitted_j, weights


def shortest_path(t: Terrain, p: Point, q: Point) -> tuple[float, list[Point]]:
    """Exact geodesic distance and path in the terrain between p and q."""
    if not point_in_terrain(p, t) or not point_in_terrain(q, t):
        raise GeometryError("shortest path endpoints must lie in the terrain")
    if dist(p, q) <= EPS:
        return 0.0, [p]
    if segment_in_terrain(p, q, t):
        return dist(p, q), [p, q]
    nodes, ai, aj, w = _visibility_graph(t, p, q)
    V = len(nodes)
    graph = csr_matrix((np.array(w + w), (np.array(ai + aj), np.array(aj + ai))),
                       shape=(V, V))
    dists, pred = dijkstra(graph, directed=False, indices=0, return_predecessors=True)
    L = float(dists[1])
    if not math.isfinite(L):
        raise GeometryError("no path between the points (terrain disconnected?)")
    path_idx = [1]
    while path_idx[-1] != 0:
        path_idx.append(int(pred[path_idx[-1]]))
    path = [nodes[i] for i in reversed(path_idx)]
    return L, path


def grid_path_oracle(t: Terrain, p: Point, q: Point, resolution: float) -> float:
    """Upper bound on the geodesic via an 8-neighbor lattice restricted to
    terrain-contained edges; converges to the geodesic as resolution -> 0."""
    if resolution <= 0:
        raise GeometryError("resolution must be positive")
    if dist(p, q) <= EPS:
        return 0.0
    h = resolution
    x0, y0, x1, y1 = t.bbox
    xs = np.arange(x0 - h, x1 + 2 * h, h)
    ys = np.arange(y0 - h, y1 + 2 * h, h)
    nx, ny = len(xs), len(ys)
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    px = gx.ravel()
    py = gy.ravel()
    mask = vecgeom.terrain_membership(px, py, t)

    def node_id(ix, iy):
        return ix * ny + iy

    rows: list[np.ndarray] = []
    cols: list[np.ndarray] = []
    vals: list[np.ndarray] = []
    steps = [(1, 0, h), (0, 1, h), (1, 1, h * math.sqrt(2)), (1, -1, h * math.sqrt(2))]
    ids = np.arange(nx * ny).reshape(nx, ny)
    mask2 = mask.reshape(nx, ny)
    for dx, dy, w in steps:
        sx = slice(None, -dx) if dx else slice(None)
        tx = slice(dx, None) if dx else slice(None)
        if dy >= 0:
            sy = slice(None, -dy) if dy else slice(None)
            ty = slice(dy, None) if dy else slice(None)
        else:
            sy = slice(-dy, None)
            ty = slice(None, dy)
        ok = mask2[sx, sy] & mask2[tx, ty]
        src = ids[sx, sy][ok]
        dst = ids[tx, ty][ok]
        if len(src) == 0:
            continue
        p0 = np.column_stack((px[src], py[src]))
        p1 = np.column_stack((px[dst], py[dst]))
        clear = vecgeom.segments_clear_of_boundary(p0, p1, t)
        rows.append(src[clear])
        cols.append(dst[clear])
        vals.append(np.full(int(clear.sum()), w))

    # hook the off-lattice endpoints in with exact segments; a generous link
    # radius keeps the endpoint overhead well below the lattice distortion
    n_nodes = nx * ny
    link_radius = min(1.0, 10 * h)
    for endpoint_id, pt in ((n_nodes, p), (n_nodes + 1, q)):
        for attempt in range(4):
            r = link_radius * (2.0 ** attempt)
            near = np.nonzero(mask & (np.hypot(px - pt.x, py - pt.y) <= r))[0]
            if len(near) == 0:
                continue
            p0 = np.repeat([[pt.x, pt.y]], len(near), axis=0)
            p1 = np.column_stack((px[near], py[near]))
            clear = vecgeom.segments_clear_of_boundary(p0, p1, t)
            chosen = near[clear]
            if len(chosen) == 0:
                # conservative test failed everywhere; try exact checks on
                # the closest few nodes
                order = near[np.argsort(np.hypot(px[near] - pt.x, py[near] - pt.y))][:32]
                chosen = np.array([i for i in order
                                   if segment_in_terrain(pt, Point(px[i], py[i]), t)],
                                  dtype=int)
            if len(chosen) > 0:
                rows.append(np.full(len(chosen), endpoint_id))
                cols.append(chosen)
                vals.append(np.hypot(px[chosen] - pt.x, py[chosen] - pt.y))
                break
        else:
            raise GridResolutionError(
                "endpoint cannot be linked to the lattice (resolution too coarse)")
    # degenerate short hops only; anything longer must route via the lattice
    if dist(p, q) <= 3 * h and segment_in_terrain(p, q, t):
        rows.append(np.array([n_nodes]))
        cols.append(np.array([n_nodes + 1]))
        vals.append(np.array([dist(p, q)]))

    r = np.concatenate(rows)
    c = np.concatenate(cols)
    v = np.concatenate(vals)
    graph = csr_matrix((np.concatenate([v, v]), (np.concatenate([r, c]), np.concatenate([c, r]))),
                       shape=(n_nodes + 2, n_nodes + 2))
    d = dijkstra(graph, directed=False, indices=n_nodes)
    L = float(d[n_nodes + 1])
    if not math.isfinite(L):
        raise GridResolutionError("lattice disconnects the endpoints (resolution too coarse)")
    return L
