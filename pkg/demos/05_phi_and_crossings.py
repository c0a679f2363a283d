"""The balancing map phi, its symmetry, and curves crossing the zero set.

phi(y) lists how far each sign pattern's count is from the average.  Flipping
the sign of p_ell relabels the patterns, and phi follows along exactly.  A
line meets the zero set of the product polynomial in at most degree many
points, so it visits at most degree + 1 runs of cells.
"""
import numpy as np

from polypart.partition import partition_families
from polypart.phimap import TupleY, act, act_codomain, phi, search_phi_zero
from polypart.schedule import PartitionParams, compute_schedule
from polypart.varieties import Family, Variety, crossing_count

rng = np.random.default_rng(5)
pts = Family.from_points("pts", rng.normal(size=(30, 2)))
params = PartitionParams(2, 1, 6)
y = TupleY.random(compute_schedule(params), rng)

value = phi(y, [pts])
print("counts:", value.counts[0].tolist())
print("phi:   ", value.values[0].tolist())
beta = (1, 0)
print("phi(act(y, beta)) == act_codomain(phi(y), beta):",
      phi(act(y, beta), [pts]) == act_codomain(value, beta))

# searching for a tuple that balances every pattern
four = Family.from_points("four", [[-1.5, 0.1], [-0.5, -0.2], [0.5, 0.3], [1.5, 0.0]])
_, residual, trace = search_phi_zero([four], PartitionParams(2, 1, 3), seed=0)
print("\nbalancing four points: residual", residual, "after", len(trace), "restart(s)")

# line families and crossing counts
lines = Family("lines", [Variety.line(rng.uniform(-1, 1, 2), rng.normal(size=2), (-2, 2))
                         for _ in range(20)])
result = partition_families([lines], PartitionParams(2, 1, 6), seed=0)
P = result.product()
runs = [crossing_count(g, P).count for g in lines.varieties]
print("\nproduct degree", P.degree, " runs per line:", runs)
print("cell counts:", result.cell_table.counts[0].tolist())
