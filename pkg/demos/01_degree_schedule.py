"""How the degree budget D is split into stages.

Stage ell has to cut j * 2**(ell-1) populations at once, so it needs a
polynomial space of at least that many non-constant monomials.  The schedule
picks the smallest degree that provides them and keeps adding stages while
the degrees still fit under D.
"""
from math import comb

from polypart.schedule import PartitionParams, cell_bound_constant, compute_schedule

for n in (1, 2, 3):
    print(f"C_{n} = {float(cell_bound_constant(n)):.2f}")

print()
print(" n  j    D   deltas              s  sum")
for n, j, D in [(2, 1, 9), (2, 2, 12), (2, 2, 40), (3, 1, 30), (3, 3, 200)]:
    sched = compute_schedule(PartitionParams(n, j, D))
    print(f"{n:2d} {j:2d} {D:4d}   {str(list(sched.deltas)):18s} {sched.s:2d} {sched.total_degree:4d}")

# monomials available at each stage vs. populations to cut
sched = compute_schedule(PartitionParams(2, 2, 12))
for ell, d in enumerate(sched.deltas, start=1):
    print(f"stage {ell}: delta={d}, {comb(d + 2, 2) - 1} monomials for {2 * 2 ** (ell - 1)} populations")

print(compute_schedule(PartitionParams(2, 2, 12)).check())
