"""Cutting several point sets in half with one hyperplane.

Small inputs go through exact enumeration of hyperplanes spanned by the
points; larger ones through a smoothed multi-start search.  Either way the
answer comes with an exact certificate of side counts.
"""
import numpy as np

from polypart.hamsandwich import bisect, bisect_exact, bisect_search, certify

rng = np.random.default_rng(3)

red = rng.normal(size=(7, 2))
blue = rng.normal(loc=(2, 1), size=(6, 2))
h, cert = bisect_exact([red, blue])
print("exact:", h.to_record())
print("  (pos, neg, on) per set:", cert.counts, "valid:", cert.valid)

# four clouds in R^4, too big for enumeration
clouds = [rng.normal(loc=i, size=(40, 4)) for i in range(4)]
h, cert = bisect_search(clouds, seed=0)
print("search in R^4:", cert.counts, "valid:", cert.valid)

# flipping the hyperplane swaps the two sides
print("negated:", certify(h.negated(), clouds).counts)

# the dispatcher picks the method
for m in (10, 60):
    _, cert = bisect([rng.normal(size=(m, 3)) for _ in range(3)])
    print(f"{3 * m:3d} points ->", cert.method)
