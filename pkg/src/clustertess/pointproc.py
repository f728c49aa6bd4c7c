"""Point processes on bounded windows.

Configurations are finite multisets of points (atoms with integer
multiplicity) inside an axis-aligned box. Bounded windows stand in for
R^d: every consumer receives the window along with the points and has to
apply its own boundary rule.

All samplers are pure functions of (parameters, seed).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Sequence, Tuple

import numpy as np
from scipy.spatial import cKDTree
from scipy.spatial.distance import pdist

from .errors import BallsOverlap, TooFewPoints
from .randomness import make_rng, mix_seed, poisson_count

Seed = int


@dataclass(frozen=True)
class Window:
    """Axis-aligned box with an optional buffer margin.

    The buffer margin marks the zone near the boundary where extracted
    clusters are statistically unreliable; it is consumed by coverage
    estimation, not by the samplers themselves.
    """

    low: Tuple[float, ...]
    high: Tuple[float, ...]
    buffer_margin: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "low", tuple(float(c) for c in self.low))
        object.__setattr__(self, "high", tuple(float(c) for c in self.high))
        if len(self.low) != len(self.high) or not self.low:
            raise ValueError("window corners must share a positive dimension")
        extents = [h - l for l, h in zip(self.low, self.high)]
        if min(extents) <= 0.0:
            raise ValueError(f"window must satisfy low < high, got {self.low} .. {self.high}")
        if self.buffer_margin < 0.0 or 2.0 * self.buffer_margin >= min(extents):
            raise ValueError("buffer margin must be nonnegative and below half the smallest extent")

    @property
    def dimension(self) -> int:
        return len(self.low)

    def extent(self) -> np.ndarray:
        return np.asarray(self.high) - np.asarray(self.low)

    def volume(self) -> float:
        return float(np.prod(self.extent()))

    def diameter(self) -> float:
        return float(np.linalg.norm(self.extent()))

    def erode(self, margin: float) -> "Window":
        return Window(
            tuple(l + margin for l in self.low),
            tuple(h - margin for h in self.high),
        )

    def contains(self, points: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        low = np.asarray(self.low)
        high = np.asarray(self.high)
        return np.all((pts >= low) & (pts <= high), axis=1)

    def contains_ball(self, center: Sequence[float], radius: float) -> bool:
        return all(
            c - radius >= l and c + radius <= h
            for c, l, h in zip(center, self.low, self.high)
        )

    def boundary_distance(self, point: Sequence[float]) -> float:
        return min(
            min(c - l, h - c) for c, l, h in zip(point, self.low, self.high)
        )


class PointConfiguration:
    """Finite point configuration: atoms with multiplicities in a window.

    Atoms are stored in lexicographic order, which makes configurations
    canonical: equal inputs compare equal and serialize identically.
    """

    __slots__ = ("points", "multiplicities", "window", "_hash")

    def __init__(
        self,
        points: Sequence[Sequence[float]],
        multiplicities: Optional[Sequence[int]] = None,
        window: Window = None,
    ):
        if window is None:
            raise ValueError("a point configuration needs its window")
        pts = np.asarray(points, dtype=float)
        if pts.size == 0:
            pts = pts.reshape(0, window.dimension)
        if pts.ndim != 2 or pts.shape[1] != window.dimension:
            raise ValueError("points must be an (n, d) array matching the window dimension")
        if multiplicities is None:
            mult = np.ones(len(pts), dtype=np.int64)
        else:
            mult = np.asarray(multiplicities, dtype=np.int64)
        if mult.shape != (len(pts),) or (len(mult) and mult.min() < 1):
            raise ValueError("multiplicities must be positive, one per point")
        if len(pts) and not np.all(window.contains(pts)):
            raise ValueError("all points must lie inside the window")
        if len(pts):
            order = np.lexsort(tuple(pts[:, j] for j in range(pts.shape[1] - 1, -1, -1)))
            pts = pts[order]
            mult = mult[order]
            if np.any(np.all(pts[1:] == pts[:-1], axis=1)):
                raise ValueError("points must be pairwise distinct")
        pts.setflags(write=False)
        mult.setflags(write=False)
        self.points = pts
        self.multiplicities = mult
        self.window = window
        self._hash = None

    @property
    def dimension(self) -> int:
        return self.window.dimension

    @property
    def n_atoms(self) -> int:
        return len(self.points)

    @property
    def total_count(self) -> int:
        return int(self.multiplicities.sum())

    @property
    def is_simple(self) -> bool:
        return bool(np.all(self.multiplicities == 1))

    def atoms(self) -> Iterator[Tuple[Tuple[float, ...], int]]:
        for p, m in zip(self.points, self.multiplicities):
            yield tuple(p), int(m)

    def __len__(self) -> int:
        return self.n_atoms

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PointConfiguration)
            and self.window == other.window
            and np.array_equal(self.points, other.points)
            and np.array_equal(self.multiplicities, other.multiplicities)
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(
                (self.window, self.points.tobytes(), self.multiplicities.tobytes())
            )
        return self._hash

    def __repr__(self) -> str:
        return f"PointConfiguration({self.n_atoms} atoms, window {self.window.low}..{self.window.high})"


# signature of the pluggable process samplers consumed elsewhere
ProcessSampler = Callable[[Window, Seed], PointConfiguration]


@dataclass(frozen=True)
class DiscreteIntensity:
    """Intensity measure with mass c at each of finitely many sites."""

    sites: Tuple[Tuple[float, ...], ...]
    c: float

    def __post_init__(self):
        object.__setattr__(
            self, "sites", tuple(tuple(float(x) for x in s) for s in self.sites)
        )
        if self.c <= 0.0:
            raise ValueError(f"per-site mass must be positive, got {self.c}")
        if len(set(self.sites)) != len(self.sites):
            raise ValueError("intensity sites must be pairwise distinct")


def sample_poisson_homogeneous(lam: float, window: Window, seed: Seed) -> PointConfiguration:
    """Homogeneous Poisson process with intensity lam on the window.

    The total count is Poisson(lam * volume); given the count, points
    are independent and uniform. All multiplicities are one.
    """
    if lam <= 0.0:
        raise ValueError(f"intensity must be positive, got {lam}")
    rng = make_rng(seed)
    n = poisson_count(rng, lam * window.volume())
    coords = np.asarray(window.low) + rng.random((n, window.dimension)) * window.extent()
    return PointConfiguration(coords, None, window)


def sample_poisson_discrete(
    rho: DiscreteIntensity, seed: Seed, window: Optional[Window] = None
) -> PointConfiguration:
    """Poisson process with discrete intensity: site e carries an
    independent Poisson(c) multiplicity, zero-count sites are omitted."""
    sites = np.asarray(rho.sites, dtype=float)
    if window is None:
        window = _bounding_window(sites)
    rng = make_rng(seed)
    counts = np.array([poisson_count(rng, rho.c) for _ in range(len(sites))], dtype=np.int64)
    keep = counts > 0
    return PointConfiguration(sites[keep], counts[keep], window)


def _bounding_window(sites: np.ndarray, pad: float = 0.5) -> Window:
    if len(sites) == 0:
        raise ValueError("cannot derive a window from zero sites; pass one explicitly")
    low = sites.min(axis=0) - pad
    high = sites.max(axis=0) + pad
    return Window(tuple(low), tuple(high))


def support(eta: PointConfiguration) -> PointConfiguration:
    """Forget multiplicities: same point set, every atom counted once."""
    return PointConfiguration(eta.points, None, eta.window)


def deterministic_lattice(sites: Sequence[Sequence[float]], window: Window) -> PointConfiguration:
    """The process that produces exactly these sites, with probability one."""
    return PointConfiguration(np.asarray(sites, dtype=float).reshape(-1, window.dimension), None, window)


def min_pairwise_distance(points: Sequence[Sequence[float]]) -> float:
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if len(pts) < 2:
        raise TooFewPoints("need at least two points for a pairwise distance")
    return float(pdist(pts).min())


def barycentre_shift(
    eta: PointConfiguration, sites: Sequence[Sequence[float]], epsilon: float
) -> PointConfiguration:
    """Replace the points near each site by their barycentre.

    Each site e receives the multiplicity-weighted barycentre of the
    atoms in the open ball B_eps(e), or e itself when that ball is
    empty. Requires 2*epsilon below the minimal site spacing so the
    balls cannot intersect; the output then has exactly one point per
    site, each within epsilon of its site.
    """
    site_arr = np.atleast_2d(np.asarray(sites, dtype=float))
    if epsilon <= 0.0:
        raise ValueError("epsilon must be positive")
    if len(site_arr) >= 2 and 2.0 * epsilon >= min_pairwise_distance(site_arr):
        raise BallsOverlap(
            f"2*epsilon = {2 * epsilon} reaches the minimal site spacing"
        )
    out = site_arr.copy()
    if eta.n_atoms:
        tree = cKDTree(site_arr)
        dist, idx = tree.query(eta.points, k=1)
        near = dist < epsilon  # open ball
        if np.any(near):
            weights = eta.multiplicities[near].astype(float)
            targets = idx[near]
            sums = np.zeros_like(site_arr)
            np.add.at(sums, targets, eta.points[near] * weights[:, None])
            totals = np.zeros(len(site_arr))
            np.add.at(totals, targets, weights)
            hit = totals > 0
            out[hit] = sums[hit] / totals[hit, None]
    return PointConfiguration(out, None, eta.window)


def replicate(
    sampler: ProcessSampler, window: Window, base_seed: Seed, n_reps: int
) -> Iterator[PointConfiguration]:
    """Independent replications with seeds mix(base_seed, index)."""
    for i in range(n_reps):
        yield sampler(window, mix_seed(base_seed, i))


def empty_process(window: Window, seed: Seed) -> PointConfiguration:
    """Sampler producing the empty configuration, regardless of seed."""
    return PointConfiguration(np.empty((0, window.dimension)), None, window)
