"""Two ways to randomize the silver-mean chain.

Thinning keeps each strip lattice point with probability 1 - exp(-c):
tiles merge, and every merged length is still n + m*sqrt(2). The
barycentre shift instead moves every lattice point to the average of
the base-process points inside its epsilon-ball, so tiles change length
by at most 2*epsilon and fringe sites slide in and out of the strip,
while the vertex density stays that of the deterministic chain.

Run:  python3 demos/06_randomized_chains.py
"""

from functools import partial

import numpy as np

from clustertess import (
    SQRT2,
    deterministic_chain,
    mix_seed,
    sample_poisson_homogeneous,
    shifted_chain,
    thinned_chain,
    tile_length_histogram,
)

det = deterministic_chain(0.0, 200.0)
print(f"deterministic chain on [0, 200]: {len(det.vertices)} vertices")

print("\n-- thinning with c = 1 (keep probability 0.632) --")
thinned = thinned_chain(1.0, 0.0, 200.0, seed=5)
print(f"{len(thinned.vertices)} vertices survive")
hist = tile_length_histogram(thinned, 1e-9)
for (n, m), count in sorted(hist.counts.items()):
    print(f"   {n} + {m}*sqrt(2) = {n + m * SQRT2:7.4f}: {count}")
print(f"   undecomposed: {len(hist.undecomposed)}")

print("\n-- barycentre shift with epsilon = 0.1, Poisson base --")
base = partial(sample_poisson_homogeneous, 5.0)
shifted = shifted_chain(0.1, base, 0.0, 200.0, seed=5)
print(f"{len(shifted.vertices)} vertices (deterministic count {len(det.vertices)})")
tiles = np.asarray(shifted.tiles)
near_short = np.abs(tiles - 1.0) <= 0.2
near_long = np.abs(tiles - (1.0 + SQRT2)) <= 0.2
print(f"   {near_short.sum()} tiles within 0.2 of length 1")
print(f"   {near_long.sum()} tiles within 0.2 of length 1+sqrt(2)")
print(f"   {len(tiles) - int(near_short.sum()) - int(near_long.sum())} new tiles from the strip fringe")

counts = [
    len(shifted_chain(0.1, base, 0.0, 200.0, mix_seed(5, rep)).vertices)
    for rep in range(100)
]
print(
    f"vertex count over 100 replications: {np.mean(counts):.2f} +- {np.std(counts):.2f}"
    f" (deterministic {len(det.vertices)})"
)
