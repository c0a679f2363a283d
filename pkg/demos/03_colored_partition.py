"""Partition two colored point clouds in the plane and draw the cells.

With D = 12 the schedule is [2, 3, 4]: three polynomials, eight sign
patterns, and every pattern keeps at most 64 / 8 points of each color.
"""
import sys

import numpy as np

from polypart.io import raster_ids
from polypart.partition import partition_points, verify_bounds
from polypart.schedule import PartitionParams
from polypart.varieties import Family

rng = np.random.default_rng(20240601)
red = Family.from_points("red", rng.uniform(0, 1, (64, 2)))
blue = Family.from_points("blue", rng.uniform(0, 1, (64, 2)))

params = PartitionParams(n=2, j=2, D=12)
result = partition_points([red, blue], params, seed=0)

print("deltas:", list(result.schedule.deltas), " product degree:", result.product_degree)
for name, row in zip(["red", "blue"], result.cell_table.counts):
    print(f"{name:5s}", row.tolist())
print("on the zero set:", [len(z) for z in result.on_zero_set])

report = verify_bounds(result, params)
print("bounds passed:", report["passed"])
for fam in report["families"]:
    print(f"  {fam['family']}: max {fam['max_count']} <= {fam['bound']},"
          f" scaled ratio {fam['ratio']:.1f} vs C_2 {report['cn']:.1f}")

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    sys.exit("matplotlib not installed, skipping the picture")

xs, ys, ids = raster_ids(result.polys, (0, 1, 0, 1), 400)
fig, ax = plt.subplots(figsize=(6, 6))
ax.imshow(np.ma.masked_less(ids, 0), origin="lower", extent=(0, 1, 0, 1), cmap="tab10", alpha=0.35)
ax.scatter(*red.points().T, c="tab:red", s=12)
ax.scatter(*blue.points().T, c="tab:blue", s=12)
ax.set_title("8 sign-pattern cells, <= 8 points of each color")
fig.savefig("partition.png", dpi=120)
print("wrote partition.png")
