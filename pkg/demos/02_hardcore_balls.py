"""Hard-core singletons as non-intersecting balls.

A point is a hard-core cluster when no other configuration point comes
closer than r. Drawing balls of radius r/2 around the surviving points
gives a packing: the balls never overlap, because any two survivors are
at least r apart.

Run:  python3 demos/02_hardcore_balls.py
"""

from pathlib import Path

import numpy as np

from clustertess import (
    Window,
    extract_clusters,
    hardcore_property,
    min_pairwise_distance,
    sample_poisson_homogeneous,
)
from clustertess.records import make_record
from clustertess.render import render_record

OUT = Path(__file__).parent / "output"

window = Window((0.0, 0.0), (1.0, 1.0))
r = 0.12
eta = sample_poisson_homogeneous(60.0, window, seed=8)
cfg = extract_clusters(hardcore_property(r), eta)

survivors = np.asarray([c.points[0] for c in cfg.clusters])
print(f"{eta.n_atoms} points, {len(cfg)} hard-core clusters at r = {r}")
print(f"{sum(cfg.boundary_uncertain)} of them are boundary-uncertain")
if len(survivors) >= 2:
    gap = min_pairwise_distance(survivors)
    print(f"closest survivor pair: {gap:.4f} (>= r, so r/2 balls are disjoint)")

OUT.mkdir(exist_ok=True)
path = OUT / "hardcore_balls.svg"
path.write_text(render_record(make_record(0, eta, cfg), style="hardcore", radius=r))
print(f"wrote {path}")
