import numpy as np
import pytest

from clustertess import (
    Cluster,
    NotSimple,
    PointConfiguration,
    PropertyMode,
    UnsupportedDimension,
    Window,
    circumball,
    cluster_count,
    delone_property,
    extract_clusters,
    hardcore_property,
    mix_seed,
    sample_poisson_homogeneous,
    voronoi_cell_centers,
    voronoi_property,
)
from clustertess.geometry import BallSide, ball_contains

from helpers import exhaustive_delone, voronoi_vertices_brute_force

BIG = Window((-10.0, -10.0), (10.0, 10.0))


def config(points, window=BIG, mult=None):
    return PointConfiguration(points, mult, window)


# ---------------------------------------------------------------------------
# hard-core


def test_hardcore_two_far_points():
    cfg = extract_clusters(hardcore_property(2.0), config([(0, 0), (3, 0)]))
    assert len(cfg) == 2  # distance 3 >= 2


def test_hardcore_two_close_points():
    cfg = extract_clusters(hardcore_property(2.0), config([(0, 0), (1, 0)]))
    assert len(cfg) == 0


def test_hardcore_single_point():
    cfg = extract_clusters(hardcore_property(2.0), config([(1, 1)]))
    assert cfg.clusters == (Cluster([(1, 1)]),)


def test_hardcore_boundary_flag():
    window = Window((0, 0), (10, 10))
    eta = config([(0.5, 5.0), (5.0, 5.0)], window)
    cfg = extract_clusters(hardcore_property(1.0), eta)
    flags = dict(zip(cfg.clusters, cfg.boundary_uncertain))
    assert flags[Cluster([(0.5, 5.0)])] is True
    assert flags[Cluster([(5.0, 5.0)])] is False


def test_hardcore_extracted_points_pairwise_separated():
    for rep in range(30):
        eta = sample_poisson_homogeneous(20.0, Window((0, 0), (1, 1)), mix_seed(71, rep))
        cfg = extract_clusters(hardcore_property(0.1), eta)
        pts = np.asarray([c.points[0] for c in cfg.clusters])
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                assert np.linalg.norm(pts[i] - pts[j]) >= 0.1


# ---------------------------------------------------------------------------
# Delone


def test_delone_right_isoceles_radius_cap():
    eta = config([(0, 0), (1, 0), (0, 1)])
    assert len(extract_clusters(delone_property(1.0), eta)) == 1
    # circumradius sqrt(2)/2 > 0.5 violates the cap
    assert len(extract_clusters(delone_property(0.5), eta)) == 0


def test_delone_four_points_two_triangles():
    pts = [(0.0, 0.0), (2.0, 0.0), (2.2, 1.9), (0.1, 2.1)]
    eta = config(pts)
    cfg = extract_clusters(delone_property(10.0), eta)
    assert cfg.clusters == tuple(exhaustive_delone(eta, 10.0))
    assert len(cfg) == 2
    a, b = cfg.clusters
    shared = set(a.points) & set(b.points)
    assert len(shared) == 2  # the two empty triangles share one edge


def test_delone_matches_exhaustive_enumeration():
    checked = 0
    for rep in range(200):
        eta = sample_poisson_homogeneous(10.0, Window((0, 0), (1, 1)), mix_seed(81, rep))
        if eta.n_atoms > 14:
            continue
        checked += 1
        for cap in (0.2, 0.45, 2.0):
            got = list(extract_clusters(delone_property(cap), eta).clusters)
            assert got == exhaustive_delone(eta, cap)
    assert checked >= 100


def test_delone_empty_configuration():
    eta = PointConfiguration(np.empty((0, 2)), None, BIG)
    assert len(extract_clusters(delone_property(1.0), eta)) == 0


def test_delone_literal_vs_open_ball_on_cocircular_square():
    eta = config([(0, 0), (1, 0), (1, 1), (0, 1)])
    literal = extract_clusters(delone_property(1.0), eta)
    assert len(literal) == 0  # the fourth cocircular point sits on every circumsphere
    open_mode = extract_clusters(delone_property(1.0, open_ball_mode=True), eta)
    assert len(open_mode) == 4


def test_delone_post_hoc_recheck():
    # every extracted cluster satisfies the radius cap and punctured-ball
    # emptiness when re-verified through the scalar geometry ops
    cap = 0.3
    for rep in range(20):
        eta = sample_poisson_homogeneous(50.0, Window((0, 0), (1, 1)), mix_seed(91, rep))
        cfg = extract_clusters(delone_property(cap), eta)
        assert len(cfg) > 0
        for cluster in cfg.clusters:
            ball = circumball(cluster)
            assert ball.radius <= cap
            for p in map(tuple, eta.points):
                if p in cluster.points:
                    continue
                assert ball_contains(ball, p) is BallSide.OUTSIDE


def test_delone_boundary_rule():
    for rep in range(10):
        window = Window((0, 0), (1, 1))
        eta = sample_poisson_homogeneous(40.0, window, mix_seed(101, rep))
        cfg = extract_clusters(delone_property(0.4), eta)
        for cluster, uncertain in zip(cfg.clusters, cfg.boundary_uncertain):
            ball = circumball(cluster)
            inside = window.contains_ball(ball.center, ball.radius)
            assert uncertain == (not inside)


def test_extract_requires_simple_configuration():
    eta = config([(0, 0), (1, 1)], mult=[2, 1])
    with pytest.raises(NotSimple):
        extract_clusters(delone_property(1.0), eta)
    with pytest.raises(NotSimple):
        extract_clusters(hardcore_property(1.0), eta)


def test_translation_equivariance_exact():
    shift = np.asarray([0.375, -1.25])  # exactly representable shift
    for rep in range(20):
        eta = sample_poisson_homogeneous(15.0, Window((0, 0), (1, 1)), mix_seed(111, rep))
        moved = PointConfiguration(
            eta.points + shift, None, Window((0.375, -1.25), (1.375, -0.25))
        )
        for prop in (hardcore_property(0.15), delone_property(0.35)):
            base = extract_clusters(prop, eta)
            translated = extract_clusters(prop, moved)
            expected = tuple(
                sorted(Cluster(np.asarray(c.points) + shift) for c in base.clusters)
            )
            assert translated.clusters == expected
            assert translated.boundary_uncertain == base.boundary_uncertain


# ---------------------------------------------------------------------------
# Voronoi


def test_voronoi_five_point_example():
    window = Window((-3.0, -3.0), (3.0, 3.0))
    eta = config([(1, 0), (0, 1), (-1, 0), (0, -1), (0, 0)], window)
    cells = extract_clusters(voronoi_property(window), eta)
    assert len(cells) == 1
    cell = cells.clusters[0]
    # counterclockwise around the center, starting from the smallest angle
    assert cell.points == ((-0.5, -0.5), (0.5, -0.5), (0.5, 0.5), (-0.5, 0.5))
    centers = voronoi_cell_centers(eta, window)
    assert centers[cell] == (0.0, 0.0)


def test_voronoi_collinear_configuration_empty():
    window = Window((-3.0, -3.0), (3.0, 3.0))
    eta = config([(-1.0, 0.0), (0.0, 0.0), (1.0, 0.0), (2.0, 0.0)], window)
    assert len(extract_clusters(voronoi_property(window), eta)) == 0


def test_voronoi_matches_equidistance_oracle():
    window = Window((0.0, 0.0), (1.0, 1.0))
    eta = sample_poisson_homogeneous(30.0, window, 42)
    cells = extract_clusters(voronoi_property(window), eta)
    centers = voronoi_cell_centers(eta, window)
    oracle = voronoi_vertices_brute_force(eta)
    point_index = {tuple(p): i for i, p in enumerate(eta.points)}
    n_checked = 0
    for cell, uncertain in zip(cells.clusters, cells.boundary_uncertain):
        if uncertain:
            continue
        n_checked += 1
        ci = point_index[centers[cell]]
        expected = sorted(tuple(v) for v, near in oracle.values() if ci in near)
        got = sorted(cell.points)
        assert len(got) == len(expected)
        for g, e in zip(got, expected):
            assert np.linalg.norm(np.subtract(g, e)) <= 1e-9
    assert n_checked >= 5


def test_voronoi_cells_never_in_configuration():
    window = Window((0.0, 0.0), (1.0, 1.0))
    prop = voronoi_property(window)
    for rep in range(10):
        eta = sample_poisson_homogeneous(25.0, window, mix_seed(121, rep))
        in_mode = extract_clusters(prop, eta, mode=PropertyMode.IN_CONFIGURATION)
        assert len(in_mode) == 0


def test_voronoi_delone_duality():
    # circumcenters of uncapped empty-circumball triangles are exactly the
    # Voronoi vertices; restricted to boundary-certain objects the cell
    # vertices form a subset (a certain triangle may border uncertain cells)
    window = Window((0.0, 0.0), (1.0, 1.0))
    for seed in (3, 5, 9, 11):
        eta = sample_poisson_homogeneous(30.0, window, seed)
        cap = 2.0 * window.diameter()
        triangles = extract_clusters(delone_property(cap), eta)
        cells = extract_clusters(voronoi_property(window), eta)

        def rounded(p):
            return tuple(round(x, 8) for x in p)

        centers_all = {rounded(circumball(t).center) for t in triangles.clusters}
        vertices_all = {rounded(p) for c in cells.clusters for p in c.points}
        assert vertices_all == centers_all
        centers_certain = {
            rounded(circumball(t).center)
            for t, u in zip(triangles.clusters, triangles.boundary_uncertain)
            if not u
        }
        vertices_certain = {
            rounded(p)
            for c, u in zip(cells.clusters, cells.boundary_uncertain)
            if not u
            for p in c.points
        }
        assert vertices_certain <= centers_certain
        # each certain circumcenter is a genuine Voronoi vertex: equidistant
        # to its three owners with no configuration point strictly closer
        for t, u in zip(triangles.clusters, triangles.boundary_uncertain):
            if u:
                continue
            ball = circumball(t)
            dists = np.linalg.norm(eta.points - np.asarray(ball.center), axis=1)
            assert np.all(dists >= ball.radius * (1 - 1e-9))


def test_voronoi_rejects_other_dimensions():
    with pytest.raises(UnsupportedDimension):
        voronoi_property(Window((0,), (1,)))
    with pytest.raises(UnsupportedDimension):
        voronoi_property(Window((0, 0, 0), (1, 1, 1)))


# ---------------------------------------------------------------------------
# counting


def test_cluster_count():
    window = Window((0, 0), (1, 1))
    eta = sample_poisson_homogeneous(20.0, window, 5)
    cfg = extract_clusters(delone_property(0.4), eta)
    assert cluster_count(cfg) == len(cfg.clusters)
    assert cluster_count(cfg, certain_only=True) == sum(
        1 for u in cfg.boundary_uncertain if not u
    )
    empty = extract_clusters(delone_property(0.4), PointConfiguration(np.empty((0, 2)), None, window))
    assert cluster_count(empty) == 0
