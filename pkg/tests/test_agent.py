import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import empty_square_terrain, square
from thunt import (AdviceError, GeometryError, Point, Polygon, Terrain,
                   choose_directions, cow_path, encode, make_advice, sees,
                   segment_in_terrain, thunt)
from thunt.agent import MoveKind, Trajectory
from thunt.generators import random_fat_polygon

UNIT = Polygon([(0, 0), (1, 0), (1, 1), (0, 1)])


def cowpath_bound(dmin):
    return max(9.0 * dmin, dmin + 2.0)


# --- direction rule -----------------------------------------------------------

def test_dir1_on_vertical_side_heads_north():
    # left side of the CCW square runs downward, so "toward the northern
    # endpoint" is the reverse sense
    d1, d2 = choose_directions(UNIT, Point(0, 0.5))
    assert (d1, d2) == (-1, 1)
    # right side runs upward: forward sense
    d1, _ = choose_directions(UNIT, Point(1, 0.5))
    assert d1 == 1


def test_dir1_on_horizontal_side_heads_west():
    d1, _ = choose_directions(UNIT, Point(0.5, 0))  # bottom edge, CCW = east
    assert d1 == -1
    d1, _ = choose_directions(UNIT, Point(0.5, 1))  # top edge, CCW = west
    assert d1 == 1


def test_dir1_at_corner_prefers_vertical_side():
    # corner (1,0): adjacent sides head north (angle 0) and west (angle pi/2)
    d1, _ = choose_directions(UNIT, Point(1, 0))
    assert d1 == 1  # CCW = up the right side


def test_dir1_tie_breaks_clockwise_from_north():
    # diamond vertex with both sides at 45 degrees from north
    diamond = Polygon([(1, 0), (2, 1), (1, 2), (0, 1)])
    d1, _ = choose_directions(diamond, Point(1, 0))
    # NE side (toward (2,1), bearing 45) beats NW side (bearing 315)?
    # smaller clockwise bearing from north wins: 45 < 315
    assert d1 == 1


# --- cow path ------------------------------------------------------------------

def test_cow_path_square_hand_simulation():
    traj = Trajectory()
    rp, st_ = cow_path(UNIT, Point(-3, 0.5), Point(3, 0.5), Point(0, 0.5), traj)
    assert math.dist(rp, (1.0, 0.5)) < 1e-9
    assert abs(st_.dmin - 2.0) < 1e-9
    assert abs(st_.walked - 4.0) < 1e-9
    assert [round(p.length, 9) for p in traj.pieces] == [1.0, 1.0, 2.0]
    assert all(p.kind is MoveKind.PERIMETER_WALK for p in traj.pieces)


def test_cow_path_found_in_first_leg():
    # r on the left side, r' 0.5 up-and-around in dir1 (north)
    r = Point(0, 0.7)
    rp_expect = Point(0.2, 1.0)  # 0.3 up + 0.2 east along the top
    traj = Trajectory()
    rp, st_ = cow_path(UNIT, r, rp_expect, r, traj)
    assert math.dist(rp, rp_expect) < 1e-9
    assert abs(st_.walked - 0.5) < 1e-9


def test_cow_path_rejects_tangent_line():
    traj = Trajectory()
    with pytest.raises(GeometryError):
        cow_path(UNIT, Point(-1, 1.0), Point(2, 1.0), Point(0.5, 1.0), traj)


@given(st.integers(0, 10 ** 6))
@settings(max_examples=60)
def test_cow_path_respects_doubling_bound(seed):
    rng = random.Random(seed)
    c = rng.choice([1.5, 2.0, 3.0])
    poly = random_fat_polygon(rng, c, radius=0.5 + 2.5 * rng.random())
    u, v = rng.random(), rng.random()
    a = poly.point_at_arc(u * poly.perimeter)
    b = poly.point_at_arc(v * poly.perimeter)
    if math.dist(a, b) < 1e-6:
        return
    traj = Trajectory()
    try:
        rp, st_ = cow_path(poly, a, b, a, traj)
    except GeometryError:
        return  # chord degenerated to a tangent (same edge)
    assert st_.walked <= cowpath_bound(st_.dmin) + 1e-9


# --- the hunt --------------------------------------------------------------------

def test_hunt_straight_line():
    t = empty_square_terrain(10, -5)
    out = thunt(t, Point(0, 0), encode(2, 2, 1), treasure=Point(0.75, 0.75))
    assert out.reached_qprime
    assert math.dist(out.q_prime, (0.75, 0.25)) < 1e-12
    assert abs(out.total_length - math.sqrt(0.75 ** 2 + 0.25 ** 2)) < 1e-12
    assert len(out.trajectory.pieces) == 1
    assert out.trajectory.pieces[0].kind is MoveKind.FREE_MOVE


def test_hunt_around_one_obstacle():
    t = Terrain(square(-2, -2, 12), [square(2, 0.1, 1.2)])
    p, q = Point(0, 0.7), Point(6, 0.75)
    advice = make_advice(t, p, q)
    out = thunt(t, p, advice, treasure=q)
    assert out.reached_qprime
    assert math.dist(out.trajectory.pieces[-1].points[-1], out.q_prime) < 1e-9
    assert sees(out.q_prime, q, t)
    kinds = {piece.kind for piece in out.trajectory.pieces}
    assert kinds == {MoveKind.FREE_MOVE, MoveKind.PERIMETER_WALK}
    assert len(out.cowpath) == 1
    # every sub-segment of every piece must stay in the terrain
    for piece in out.trajectory.pieces:
        for a, b in zip(piece.points, piece.points[1:]):
            assert segment_in_terrain(a, b, t)


def test_hunt_first_sight_zero_when_visible_at_start():
    t = empty_square_terrain(10, -5)
    out = thunt(t, Point(0, 0), encode(2, 2, 1), treasure=Point(0.3, 0.4))
    assert out.first_sight_length == 0.0


def test_hunt_first_sight_bracketed():
    t = empty_square_terrain(20, -10)
    q = Point(4.0, 3.0)  # distance 5 from start
    advice = make_advice(t, Point(0, 0), q)
    out = thunt(t, Point(0, 0), advice, treasure=q)
    assert out.first_sight_length is not None
    assert 0 < out.first_sight_length <= out.total_length
    # straight walk toward a tile center near q: visibility starts around
    # distance |pq| - 1 = 4
    assert abs(out.first_sight_length - 4.0) < 0.2


def test_hunt_rejects_malformed_advice():
    t = empty_square_terrain(10, -5)
    with pytest.raises(AdviceError):
        thunt(t, Point(0, 0), "110110", treasure=Point(1, 1))


def test_hunt_rejects_advice_pointing_outside():
    t = empty_square_terrain(10, -5)
    with pytest.raises(AdviceError):
        thunt(t, Point(0, 0), encode(1, 40, 40))


def test_hunt_strict_mode_rejects_nonconvex():
    from thunt.generators import CombParams, comb_terrain
    t, p, q = comb_terrain(CombParams(12, 1, 0.25))
    with pytest.raises(GeometryError):
        thunt(t, p, encode(2, 2, 1), strict=True)


def test_hunt_deterministic():
    t = Terrain(square(-2, -2, 12), [square(2, 0.1, 1.2), square(4.1, -0.4, 0.9)])
    p, q = Point(0, 0.7), Point(6.5, 0.75)
    advice = make_advice(t, p, q)
    a = thunt(t, p, advice, treasure=q)
    b = thunt(t, p, advice, treasure=q)
    assert a.trajectory.pieces == b.trajectory.pieces
    assert a.total_length == b.total_length
    assert a.first_sight_length == b.first_sight_length


def test_cow_path_enters_at_vertex():
    # line through both extreme vertices of a diamond: r and r' are vertices
    diamond = Polygon([(3, 0), (4, 1), (5, 0), (4, -1)])
    traj = Trajectory()
    rp, st_ = cow_path(diamond, Point(-1, 0), Point(9, 0), Point(3, 0), traj)
    assert math.dist(rp, (5.0, 0.0)) < 1e-9
    assert abs(st_.dmin - 2 * math.sqrt(2)) < 1e-9


def test_hunt_through_diamond_obstacle():
    diamond = Polygon([(3, 0.25), (4, 1.25), (5, 0.25), (4, -0.75)])
    t = Terrain(square(-2, -3, 12), [diamond])
    p = Point(0, 0.25)
    q = Point(8, 0.25)
    advice = make_advice(t, p, q)
    out = thunt(t, p, advice, treasure=q)
    assert out.reached_qprime
    assert len(out.cowpath) == 1
    assert sees(out.q_prime, q, t)


def test_hunt_rides_along_obstacle_edge():
    # the line to the target tile runs exactly along an obstacle's bottom
    # edge: touching the perimeter is not a hit, no detour happens
    t = Terrain(square(-2, -4, 14), [square(3, 0.25, 1.0)])
    p = Point(0, 0.25)
    q = Point(8, 0.25)
    advice = make_advice(t, p, q)
    out = thunt(t, p, advice, treasure=q)
    assert out.reached_qprime
    assert out.cowpath == []
    assert len(out.trajectory.pieces) == 1
    assert abs(out.total_length - math.dist(p, out.q_prime)) < 1e-9


def test_trajectory_point_at():
    traj = Trajectory()
    traj.append([Point(0, 0), Point(1, 0)], MoveKind.FREE_MOVE)
    traj.append([Point(1, 0), Point(1, 2)], MoveKind.PERIMETER_WALK)
    assert math.dist(traj.point_at(0.5), (0.5, 0)) < 1e-12
    assert math.dist(traj.point_at(1.5), (1.0, 0.5)) < 1e-12
    assert math.dist(traj.point_at(99), (1.0, 2.0)) < 1e-12
