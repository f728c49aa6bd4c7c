"""The silver-mean chain by cut and project.

Take the planar lattice spanned by (1, 1) and (sqrt(2), -sqrt(2)), keep
the points whose second coordinate lies in the strip [-1/sqrt(2),
1/sqrt(2)], and project to the first coordinate. The projections are
the vertices of an aperiodic chain with exactly two prototile lengths,
1 and 1 + sqrt(2).

Run:  python3 demos/05_silver_mean_chain.py
"""

from collections import Counter
from pathlib import Path

from clustertess import (
    SQRT2,
    Window,
    deterministic_chain,
    deterministic_lattice,
    lattice_sites_in_window,
    strip_points,
    tile_length_histogram,
)
from clustertess.records import make_record
from clustertess.render import render_record

OUT = Path(__file__).parent / "output"

chain = deterministic_chain(0.0, 40.0)
print(f"chain on [0, 40]: {len(chain.vertices)} vertices, {len(chain.tiles)} tiles")
hist = tile_length_histogram(chain, 1e-9)
for (n, m), count in hist.counts.items():
    print(f"   tile length {n + m * SQRT2:.6f} = {n} + {m}*sqrt(2): {count} tiles")

sites = strip_points(0.0, 40.0)
print("tile sequence (S = short 1, L = long 1+sqrt2):")
seq = "".join("S" if abs(t - 1.0) < 1e-9 else "L" for t in chain.tiles)
print("   " + seq)

pattern = Counter(seq[i : i + 2] for i in range(len(seq) - 1))
print(f"adjacent pairs: {dict(sorted(pattern.items()))} (two short tiles never sit side by side)")

# strip picture: the planar lattice with the acceptance band and ticks
window = Window((0.0, -3.0), (20.0, 3.0))
lattice = deterministic_lattice([e.embed() for e in lattice_sites_in_window(window)], window)
OUT.mkdir(exist_ok=True)
path = OUT / "silver_mean_strip.svg"
path.write_text(render_record(make_record(0, lattice), style="strip"))
print(f"wrote {path}")
