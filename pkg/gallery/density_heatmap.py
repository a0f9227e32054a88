"""Write the density on a grid and an empirical histogram next to it.

Produces two CSV files in the current directory that any plotting tool can
render as heatmaps:

  density_grid.csv      u, v, g(u, v) from the closed form
  empirical_grid.csv    i, j, normalised count of even pairs in cell (i, j)
"""
import numpy as np

from evenfarey.cli import density_grid
from evenfarey.io import write_csv, format_float
from evenfarey.pairs import even_pairs, grid_counts

n = 201
g = density_grid(n, threads=4)
rows = []
for i in range(n):
    for j in range(n):
        rows.append((format_float(i / (n - 1)), format_float(j / (n - 1)), format_float(g[i, j])))
write_csv("density_grid.csv", ["u", "v", "g"], rows)

m, Q = 50, 3000
counts = grid_counts(even_pairs(Q), m)
dens = counts * m * m / counts.sum()
write_csv("empirical_grid.csv", ["i", "j", "density"],
          [(i, j, format_float(dens[i, j])) for i in range(m) for j in range(m)])

finite = g[np.isfinite(g)]
print(f"grid {n}x{n}: max finite g {finite.max():.3f}, zero share {np.mean(finite == 0):.3f}")
print(f"empirical {m}x{m} at Q={Q}: max {dens.max():.3f}")
