"""Independent oracles used across the test modules.

These deliberately avoid the production code paths they check:
exhaustive enumeration instead of grid pruning, closed-form determinant
circumcenters instead of the elimination solver, linear feasibility
instead of Qhull, barycentric signs instead of halfspace tests.
"""

import itertools

import numpy as np
from scipy.optimize import linprog

from clustertess import Cluster, DegenerateSimplex, ball_contains, circumball
from clustertess.geometry import BallSide


def exhaustive_delone(eta, radius_cap, open_ball_mode=False):
    """All (d+1)-subsets passing the Delone membership, with no pruning.

    Membership is evaluated through the scalar geometry operations
    (circumball by elimination, ball_contains trichotomy), so this is
    also a second numeric route against the vectorized extractor.
    """
    d = eta.dimension
    pts = [tuple(p) for p in eta.points]
    out = []
    for combo in itertools.combinations(pts, d + 1):
        cluster = Cluster(combo)
        try:
            ball = circumball(cluster)
        except DegenerateSimplex:
            continue
        if ball.radius > radius_cap:
            continue
        blocked = False
        for p in pts:
            if p in combo:
                continue
            side = ball_contains(ball, p)
            if open_ball_mode:
                if side is BallSide.INSIDE:
                    blocked = True
                    break
            elif side is not BallSide.OUTSIDE:
                blocked = True
                break
        if not blocked:
            out.append(cluster)
    return sorted(out)


def circumcenter_determinant(a, b, c):
    """2D circumcenter by the classical determinant formula."""
    ax, ay = a
    bx, by = b
    cx, cy = c
    dd = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if abs(dd) < 1e-14:
        return None
    a2 = ax * ax + ay * ay
    b2 = bx * bx + by * by
    c2 = cx * cx + cy * cy
    ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / dd
    uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / dd
    return (ux, uy)


def voronoi_vertices_brute_force(eta, tol=1e-9):
    """Voronoi vertices as equidistance witnesses.

    A vertex is any point equidistant to at least three configuration
    points with every other point strictly farther. Returns
    {rounded vertex: (vertex, frozenset of nearest point indices)}.
    """
    pts = eta.points
    found = {}
    for i, j, k in itertools.combinations(range(len(pts)), 3):
        center = circumcenter_determinant(pts[i], pts[j], pts[k])
        if center is None:
            continue
        dists = np.linalg.norm(pts - np.asarray(center), axis=1)
        r = (dists[i] + dists[j] + dists[k]) / 3.0
        scale = max(1.0, r)
        if np.any(dists < r - tol * scale):
            continue
        nearest = frozenset(np.nonzero(dists <= r + tol * scale)[0].tolist())
        key = tuple(round(x, 9) for x in center)
        found[key] = (center, nearest)
    return found


def lp_extreme_points(points):
    """Brute-force extreme-point filter: p is extreme iff p is not in
    the convex hull of the others (linear feasibility)."""
    pts = np.asarray(points, dtype=float)
    extreme = []
    for i in range(len(pts)):
        others = np.delete(pts, i, axis=0)
        if len(others) == 0:
            extreme.append(tuple(pts[i]))
            continue
        res = linprog(
            np.zeros(len(others)),
            A_eq=np.vstack([others.T, np.ones(len(others))]),
            b_eq=np.concatenate([pts[i], [1.0]]),
            bounds=(0, None),
            method="highs",
        )
        if not res.success:
            extreme.append(tuple(pts[i]))
    return sorted(extreme)


def barycentric_inside(simplex_points, query, tol=1e-9):
    """Point-in-simplex by barycentric coordinate signs."""
    verts = np.asarray(simplex_points, dtype=float)
    d = verts.shape[1]
    mat = np.vstack([verts.T, np.ones(len(verts))])
    rhs = np.concatenate([np.asarray(query, dtype=float), [1.0]])
    try:
        coords = np.linalg.solve(mat, rhs)
    except np.linalg.LinAlgError:
        return False
    return bool(np.all(coords >= -tol))


def two_sample_chi_square(counts_a, counts_b, min_expected=5.0):
    """Two-sample chi-square statistic for equal-size count samples,
    with adjacent bins pooled until both totals reach the floor."""
    kmax = max(max(counts_a), max(counts_b))
    from collections import Counter

    ha, hb = Counter(counts_a), Counter(counts_b)
    bins = []
    acc_a = acc_b = 0.0
    for k in range(kmax + 1):
        acc_a += ha.get(k, 0)
        acc_b += hb.get(k, 0)
        if acc_a + acc_b >= 2.0 * min_expected:
            bins.append((acc_a, acc_b))
            acc_a = acc_b = 0.0
    if acc_a + acc_b > 0:
        if bins:
            last_a, last_b = bins[-1]
            bins[-1] = (last_a + acc_a, last_b + acc_b)
        else:
            bins.append((acc_a, acc_b))
    stat = sum((a - b) ** 2 / (a + b) for a, b in bins if a + b > 0)
    dof = max(1, len(bins) - 1)
    return stat, dof
