"""Homogeneous Poisson points on a bounded window.

The count in any region is Poisson distributed with mean intensity
times area, and counts in disjoint regions are independent. This script
samples a few configurations, checks the count law empirically, and
draws one realization.

Run:  python3 demos/01_poisson_points.py
"""

import math
from pathlib import Path

from clustertess import Window, mix_seed, poisson_chi_square, sample_poisson_homogeneous
from clustertess.records import make_record
from clustertess.render import render_record

OUT = Path(__file__).parent / "output"

window = Window((0.0, 0.0), (1.0, 1.0))
lam = 40.0

eta = sample_poisson_homogeneous(lam, window, seed=1)
print(f"one realization at intensity {lam}: {eta.n_atoms} points")
print("first three atoms:", [(round(float(x), 3), round(float(y), 3)) for x, y in eta.points[:3]])

n_reps = 5000
counts = [
    sample_poisson_homogeneous(lam, window, mix_seed(1, i)).total_count
    for i in range(n_reps)
]
mean = sum(counts) / n_reps
stat, threshold, dof = poisson_chi_square(counts, lam)
print(f"{n_reps} replications: mean count {mean:.2f} (expected {lam})")
print(f"chi-square against Poisson({lam:.0f}): {stat:.1f} vs threshold {threshold:.1f} ({dof} dof)")
print(f"empirical P(empty) = {counts.count(0) / n_reps:.4f}, exact = {math.exp(-lam):.2e}")

OUT.mkdir(exist_ok=True)
path = OUT / "poisson_points.svg"
path.write_text(render_record(make_record(0, eta)))
print(f"wrote {path}")
