"""Why a single balancing tuple has to exist: the Dickson obstruction.

Over F2 the product of all nonzero linear forms in s variables is the top
Dickson polynomial.  Its j-th power survives reduction modulo the ideal of
pure powers u_ell^(j 2^(ell-1) + 1); the surviving monomial is always
u_1^j u_2^(2j) ... u_s^(j 2^(s-1)).
"""
import time

from polypart.f2dickson import (dickson_product, dickson_symmetric, format_monomial, index_ideal,
                                obstruction_check, reduce_mod_ideal)

for s in range(1, 5):
    q = dickson_product(s)
    print(f"s={s}: {len(q)} terms, degree {q.degree}, matches permutation formula: {q == dickson_symmetric(s)}")

q = dickson_product(2)
print("\nq_2 =", q)
print("q_2 mod <u1^2, u2^3> =", reduce_mod_ideal(q, index_ideal(2, 1)))

print("\n s  j  survivors  witness")
for s in range(1, 5):
    for j in range(1, 4):
        t0 = time.perf_counter()
        res = obstruction_check(s, j)
        print(f"{s:2d} {j:2d}  {res.surviving_terms:9d}  {format_monomial(res.witness)}"
              f"  ({1000 * (time.perf_counter() - t0):.1f} ms)")
