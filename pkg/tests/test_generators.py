import math
import random

import numpy as np
import pytest
from scipy import ndimage

from thunt import (GadgetParams, GenerationError, Point, accessibility,
                   distance_to_boundary, gadget, gadget_hull, is_c_fat,
                   point_in_terrain, sees, shortest_path,
                   validate_regular_terrain)
from thunt.generators import (CombParams, comb_terrain, random_fat_polygon,
                              random_regular_terrain, regular_lb_terrain)
from thunt.geom import Terrain, Polygon, segment_segment_distance
from thunt import vecgeom


def free_space_labels(terrain, step, offset=0.5):
    """Flood-fill audit: label the 4-connected free-space components of an
    offset lattice (offset keeps sample points off boundaries)."""
    x0, y0, x1, y1 = terrain.bbox
    xs = np.arange(x0 + offset * step, x1, step)
    ys = np.arange(y0 + offset * step, y1, step)
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    mask = vecgeom.terrain_membership(gx.ravel(), gy.ravel(), terrain)
    grid = mask.reshape(len(xs), len(ys))
    labels, _ = ndimage.label(grid, structure=np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]]))

    def label_at(pt):
        ix = int(round((pt[0] - xs[0]) / step))
        iy = int(round((pt[1] - ys[0]) / step))
        return labels[ix, iy]

    return labels, label_at


# --- gadget -------------------------------------------------------------------

def test_gadget_layout_lam_1():
    gp = GadgetParams(Point(0, 0), 1.0)
    assert gp.square_side == 1.5
    assert gp.lateral_gap == 0.25
    assert gp.hull_side == 5.0
    squares = gadget(gp)
    assert len(squares) == 8
    north = squares[0]
    cx = sum(v.x for v in north.vertices) / 4
    cy = sum(v.y for v in north.vertices) / 4
    assert math.dist((cx, cy), (0, 1.75)) < 1e-12
    hull = gadget_hull(gp)
    assert hull.bbox == (-2.5, -2.5, 2.5, 2.5)


@pytest.mark.parametrize("lam", [0.25, 0.5, 1.0])
def test_gadget_squares_pairwise_disjoint(lam):
    squares = gadget(GadgetParams(Point(3, 7), lam))
    for i in range(len(squares)):
        for j in range(i + 1, len(squares)):
            d = min(segment_segment_distance(*ea, *eb)
                    for ea in squares[i].edges() for eb in squares[j].edges())
            assert d > 1e-9


@pytest.mark.parametrize("lam", [0.25, 1.0])
def test_gadget_blinds_outside_points(lam):
    o = Point(0, 0)
    gp = GadgetParams(o, lam)
    margin = 10 * lam
    outer = Polygon([(-margin, -margin), (margin, -margin), (margin, margin),
                     (-margin, margin)])
    t = Terrain(outer, gadget(gp))
    hull = gadget_hull(gp)
    rng = random.Random(5)
    for _ in range(300):
        if rng.random() < 0.5:
            pt = hull.point_at_arc(rng.random() * hull.perimeter)
        else:
            d = 2.5 * lam + rng.random() * lam
            ang = rng.random() * 2 * math.pi
            pt = Point(d * math.cos(ang) * 1.2, d * math.sin(ang) * 1.2)
            if abs(pt.x) <= 2.5 * lam and abs(pt.y) <= 2.5 * lam:
                continue
            if abs(pt.x) >= margin or abs(pt.y) >= margin:
                continue
        assert not sees(pt, o, t)
    assert sees(Point(0, lam), o, t)


# --- gadget-grid terrain ---------------------------------------------------------

def test_lb_terrain_k1():
    t, p, centers = regular_lb_terrain(1, 1.0)
    assert t.outer.bbox == (0.0, 0.0, 20.0, 20.0)
    assert p == Point(0.0, 0.0)
    assert len(centers) == 1          # k^2 candidates
    assert len(t.obstacles) == 8
    assert centers[0] == Point(12.5, 17.5)
    assert validate_regular_terrain(t, 2.0)


@pytest.mark.parametrize("k,lam", [(1, 1.0), (2, 0.5), (1, 0.25)])
def test_lb_candidates_have_exact_accessibility(k, lam):
    t, _, centers = regular_lb_terrain(k, lam)
    assert len(centers) == k * k
    for o in centers:
        spec = accessibility(t, o)
        assert abs(spec.lam - lam) < 1e-9
        assert abs(distance_to_boundary(o, t) - lam) < 1e-9


def test_lb_candidate_spacing():
    t, _, centers = regular_lb_terrain(2, 0.5)
    tile = 5 * 0.5
    for i in range(len(centers)):
        for j in range(i + 1, len(centers)):
            assert math.dist(centers[i], centers[j]) >= 2 * tile - 1e-9


def test_lb_shortest_path_window():
    t, p, centers = regular_lb_terrain(1, 1.0)
    A = 20.0
    L, _ = shortest_path(t, p, centers[0])
    assert math.sqrt(2) * A / 2 <= L <= math.sqrt(2) * A / 2 + A


# --- comb ------------------------------------------------------------------------

def test_comb_params_validation():
    with pytest.raises(GenerationError):
        CombParams(8, 1, 0.25)          # A too small
    with pytest.raises(GenerationError):
        CombParams(12, 0, 0.25)         # bad corridor index
    with pytest.raises(GenerationError):
        CombParams(12, 25, 0.25)        # beyond k = 24
    with pytest.raises(GenerationError):
        CombParams(12, 1, 0.26)         # A/(2x) not integral
    assert CombParams(12, 1, 0.25).k == 24


def test_comb_structure_and_connectivity():
    params = CombParams(12, 5, 0.25)
    t, p, q = comb_terrain(params)
    A, x, k, i = 12.0, 0.25, params.k, 5
    assert point_in_terrain(p, t) and point_in_terrain(q, t)
    spec = accessibility(t, q)
    assert spec.lam == 1.0

    # openness: only corridor i is free inside the sealing layer
    y_probe = A / 2 - x / 2
    for j in range(1, k + 1):
        cx = (2 * j - 2) * x + x / 2
        assert point_in_terrain(Point(cx, y_probe), t) == (j == i)

    # flood fill: bottom chamber and top chamber connect
    labels, label_at = free_space_labels(t, step=x / 4)
    bottom = label_at((A / 2, A / 8))
    top = label_at((A / 2, 3 * A / 4))
    assert bottom != 0 and top != 0
    assert bottom == top

    # ...but only through corridor i: masking its mouth disconnects them
    x0, y0, _, _ = t.bbox
    step = x / 4
    xs0 = x0 + 0.5 * step
    ys0 = y0 + 0.5 * step
    gxs = np.arange(xs0, t.bbox[2], step)
    gys = np.arange(ys0, t.bbox[3], step)
    gx, gy = np.meshgrid(gxs, gys, indexing="ij")
    mask = vecgeom.terrain_membership(gx.ravel(), gy.ravel(), t).reshape(len(gxs), len(gys))
    mouth = ((gx >= (2 * i - 2) * x) & (gx <= (2 * i - 1) * x)
             & (gy >= A / 2 - x) & (gy <= A / 2))
    mask2 = mask & ~mouth
    labels2, _ = ndimage.label(mask2, structure=np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]]))
    bi = (int(round((A / 2 - xs0) / step)), int(round((A / 8 - ys0) / step)))
    ti = (int(round((A / 2 - xs0) / step)), int(round((3 * A / 4 - ys0) / step)))
    assert labels2[bi] != labels2[ti]


def test_comb_shortest_path_window():
    t, p, q = comb_terrain(CombParams(12, 3, 0.25))
    L, _ = shortest_path(t, p, q)
    assert 6.0 < L < 30.0


def test_comb_default_width_is_tiny():
    params = CombParams(9, 1)
    assert params.width == 1.0 / 2 ** 9
    assert params.k == 9 * 2 ** 8


# --- random regular terrains --------------------------------------------------------

def test_random_fat_polygon_respects_c():
    rng = random.Random(1)
    for c in (1.5, 2.0, 3.0):
        for _ in range(20):
            poly = random_fat_polygon(rng, c, radius=1.0)
            assert is_c_fat(poly, c)


def test_random_regular_terrain_is_regular():
    for seed in range(8):
        t, p, q = random_regular_terrain(seed, seed % 6, c=2.0)
        assert validate_regular_terrain(t, 2.0)
        assert point_in_terrain(p, t) and point_in_terrain(q, t)
        assert distance_to_boundary(q, t) >= 0.05


def test_random_regular_terrain_deterministic():
    t1, p1, q1 = random_regular_terrain(99, 5)
    t2, p2, q2 = random_regular_terrain(99, 5)
    assert p1 == p2 and q1 == q2
    assert t1.outer.vertices == t2.outer.vertices
    assert all(a.vertices == b.vertices for a, b in zip(t1.obstacles, t2.obstacles))


def test_empty_random_terrain_straight_hunt():
    from thunt import make_advice, thunt as run_hunt
    t, p, q = random_regular_terrain(3, 0)
    out = run_hunt(t, p, make_advice(t, p, q), treasure=q)
    assert len(out.trajectory.pieces) == 1
    assert out.cowpath == []
