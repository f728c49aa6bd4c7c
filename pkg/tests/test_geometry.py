import math

import numpy as np
import pytest

from clustertess import (
    Ball,
    Cluster,
    DegenerateSimplex,
    UnsupportedDimension,
    ball_contains,
    circumball,
    common_face_check,
    convex_hull_vertices,
    is_discrete_polytope,
    is_full_simplex,
    make_rng,
)
from clustertess.geometry import BallSide, FaceRelation

from helpers import lp_extreme_points


def test_circumball_right_isoceles_triangle():
    ball = circumball(Cluster([(0, 0), (1, 0), (0, 1)]))
    assert ball.center == pytest.approx((0.5, 0.5), abs=1e-12)
    assert ball.radius == pytest.approx(math.sqrt(2) / 2, rel=1e-12)
    assert ball.boundary_included


def test_circumball_1d_midpoint():
    ball = circumball(Cluster([(0,), (2,)]))
    assert ball.center == pytest.approx((1.0,), abs=0)
    assert ball.radius == pytest.approx(1.0, abs=0)


def test_circumball_random_tetrahedron_seed42():
    rng = make_rng(42)
    verts = rng.random((4, 3))
    ball = circumball(Cluster(verts))
    # oracle: verify the four equidistance equations directly
    for v in verts:
        dist = float(np.linalg.norm(v - ball.center))
        assert abs(dist - ball.radius) <= 1e-9 * ball.radius


def test_circumball_degenerate_raises():
    with pytest.raises(DegenerateSimplex):
        circumball(Cluster([(0, 0), (1, 0), (2, 0)]))
    with pytest.raises(DegenerateSimplex):
        circumball(Cluster([(0, 0), (1, 1)]))  # wrong cardinality for d=2


def test_circumball_permutation_order_independence():
    rng = make_rng(7)
    for d in (2, 3):
        for _ in range(50):
            verts = rng.random((d + 1, d)) * 10 - 5
            ball = circumball(Cluster(verts))
            perm = rng.permutation(d + 1)
            ball2 = circumball(Cluster(verts[perm]))
            assert np.allclose(ball2.center, ball.center, rtol=1e-9, atol=1e-9 * ball.radius)
            assert ball2.radius == pytest.approx(ball.radius, rel=1e-9)


def test_circumball_translation_equivariance():
    rng = make_rng(8)
    for d in (2, 3):
        for _ in range(50):
            verts = rng.random((d + 1, d))
            shift = rng.random(d) * 20 - 10
            ball = circumball(Cluster(verts))
            shifted = circumball(Cluster(verts + shift))
            assert np.allclose(
                shifted.center, np.asarray(ball.center) + shift, rtol=1e-9, atol=1e-9
            )
            assert shifted.radius == pytest.approx(ball.radius, rel=1e-9)


def test_all_vertices_on_boundary_of_circumball():
    rng = make_rng(9)
    for d in (1, 2, 3):
        for _ in range(30):
            verts = rng.random((d + 1, d))
            ball = circumball(Cluster(verts))
            for v in verts:
                assert ball_contains(ball, v) is BallSide.ON_BOUNDARY


def test_is_discrete_polytope_examples():
    assert is_discrete_polytope(Cluster([(0, 0), (1, 0), (0, 1)]))
    assert not is_discrete_polytope(Cluster([(0, 0), (2, 0), (1, 0)]))
    square_plus_center = Cluster([(0, 0), (1, 0), (0, 1), (1, 1), (0.5, 0.5)])
    assert not is_discrete_polytope(square_plus_center)
    assert is_discrete_polytope(Cluster([(0.25, 0.25)]))


def test_convex_hull_trivial_examples():
    square_plus_center = Cluster([(0, 0), (1, 0), (0, 1), (1, 1), (0.5, 0.5)])
    hull = convex_hull_vertices(square_plus_center)
    assert sorted(hull.points) == [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)]
    assert sorted(convex_hull_vertices(Cluster([(0,), (1,), (2,)])).points) == [(0.0,), (2.0,)]


def test_convex_hull_matches_lp_oracle_seed7():
    rng = make_rng(7)
    pts = rng.random((20, 2))
    hull = convex_hull_vertices(Cluster(pts))
    assert sorted(hull.points) == lp_extreme_points(pts)


def test_convex_hull_3d_and_collinear_2d():
    rng = make_rng(13)
    pts = rng.random((15, 3))
    hull = convex_hull_vertices(Cluster(pts))
    assert sorted(hull.points) == lp_extreme_points(pts)
    # collinear points embedded in the plane reduce to their endpoints
    line = [(t, 2 * t) for t in (0.0, 0.25, 0.5, 1.0)]
    assert sorted(convex_hull_vertices(Cluster(line)).points) == [(0.0, 0.0), (1.0, 2.0)]


def test_convex_hull_idempotent_and_polytope():
    rng = make_rng(21)
    for _ in range(20):
        pts = rng.random((12, 2)) * 4
        hull = convex_hull_vertices(Cluster(pts))
        assert convex_hull_vertices(hull) == hull
        assert is_discrete_polytope(hull)


def test_convex_hull_unsupported_dimension():
    with pytest.raises(UnsupportedDimension):
        convex_hull_vertices(Cluster([(0, 0, 0, 0), (1, 0, 0, 0)]))


def test_ball_contains_trichotomy():
    ball = Ball((0.0, 0.0), 1.0)
    assert ball_contains(ball, (0, 0)) is BallSide.INSIDE
    assert ball_contains(ball, (1, 0)) is BallSide.ON_BOUNDARY
    assert ball_contains(ball, (2, 0)) is BallSide.OUTSIDE
    assert ball_contains(ball, (1 + 5e-10, 0)) is BallSide.ON_BOUNDARY
    assert ball_contains(ball, (1 + 5e-9, 0)) is BallSide.OUTSIDE


def test_common_face_shared_edge():
    t1 = Cluster([(0, 0), (1, 0), (0.5, 1)])
    t2 = Cluster([(0, 0), (1, 0), (0.5, -1)])
    assert common_face_check(t1, t2) is FaceRelation.COMMON_FACE


def test_common_face_overlapping_edges_improper():
    a = Cluster([(0, 0), (2, 0), (1, 1)])
    b = Cluster([(1, 0), (3, 0), (2, -1)])
    assert common_face_check(a, b) is FaceRelation.IMPROPER


def test_common_face_disjoint_boxes():
    t1 = Cluster([(0, 0), (1, 0), (0.5, 1)])
    t2 = Cluster([(5, 5), (6, 5), (5.5, 6)])
    assert common_face_check(t1, t2) is FaceRelation.DISJOINT


def test_common_face_shared_vertex_only():
    t1 = Cluster([(0, 0), (-1, 0), (-0.5, 1)])
    t2 = Cluster([(0, 0), (1, 0), (0.5, -1)])
    assert common_face_check(t1, t2) is FaceRelation.COMMON_FACE


def test_common_face_vertex_touching_edge_interior_improper():
    t1 = Cluster([(0, 0), (2, 0), (1, 1)])
    t2 = Cluster([(1, 0), (0.5, -1), (1.5, -1)])  # apex touches the base edge
    assert common_face_check(t1, t2) is FaceRelation.IMPROPER


def test_common_face_overlapping_interiors_improper():
    t1 = Cluster([(0, 0), (2, 0), (1, 2)])
    t2 = Cluster([(1, 1), (3, 1), (2, 3)])
    assert common_face_check(t1, t2) is FaceRelation.IMPROPER


def test_common_face_identical_simplices():
    t = Cluster([(0, 0), (1, 0), (0.5, 1)])
    assert common_face_check(t, t) is FaceRelation.COMMON_FACE


def test_common_face_1d():
    assert common_face_check(Cluster([(0,), (1,)]), Cluster([(1,), (2,)])) is FaceRelation.COMMON_FACE
    assert common_face_check(Cluster([(0,), (1,)]), Cluster([(0.5,), (2,)])) is FaceRelation.IMPROPER
    assert common_face_check(Cluster([(0,), (1,)]), Cluster([(3,), (4,)])) is FaceRelation.DISJOINT


def test_common_face_3d_tetrahedra():
    shared = [(0, 0, 0), (1, 0, 0), (0, 1, 0)]
    up = Cluster(shared + [(0.3, 0.3, 1.0)])
    down = Cluster(shared + [(0.3, 0.3, -1.0)])
    assert common_face_check(up, down) is FaceRelation.COMMON_FACE
    overlapping = Cluster(shared + [(0.3, 0.3, 0.5)])
    tilted = Cluster([(0.1, 0.1, 0.2), (0.9, 0.1, 0.2), (0.1, 0.9, 0.2), (0.3, 0.3, 0.9)])
    assert common_face_check(overlapping, tilted) is FaceRelation.IMPROPER


def test_is_full_simplex():
    assert is_full_simplex(Cluster([(0, 0), (1, 0), (0, 1)]))
    assert not is_full_simplex(Cluster([(0, 0), (1, 0), (2, 0)]))
    assert not is_full_simplex(Cluster([(0, 0), (1, 0)]))


def test_cluster_canonical_identity():
    a = Cluster([(1, 0), (0, 0)])
    b = Cluster([(0, 0), (1, 0)])
    assert a == b and hash(a) == hash(b)
    assert a.points == ((1.0, 0.0), (0.0, 0.0))  # presentation order preserved
    with pytest.raises(ValueError):
        Cluster([(0, 0), (0, 0)])
    with pytest.raises(ValueError):
        Cluster([])
