"""Degree schedule for iterated polynomial partitioning.

Stage ``ell`` uses a polynomial of degree ``delta_ell``, the smallest integer
with ``j * 2**(ell-1) <= delta_ell**n / n!``.  Stages are added while the
running degree total stays within the budget ``D``.
"""

from dataclasses import dataclass
from math import comb, factorial

import mpmath

# Working precision for C_n; far beyond what the strict comparisons need.
_DPS = 50


@dataclass(frozen=True)
class PartitionParams:
    n: int
    j: int
    D: int

    def __post_init__(self):
        for name in ("n", "j", "D"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")


@dataclass(frozen=True)
class DegreeSchedule:
    n: int
    j: int
    D: int
    deltas: tuple
    cn: mpmath.mpf

    @property
    def s(self):
        return len(self.deltas)

    @property
    def total_degree(self):
        return sum(self.deltas)

    def check(self):
        """Return a dict of named invariant checks (all should be True)."""
        n, j, D, s = self.n, self.j, self.D, self.s
        nf = factorial(n)
        per_stage = all(
            nf * j * 2 ** (ell - 1) <= d ** n < nf * j * 2 ** n * 2 ** (ell - 1)
            and comb(d + n, n) >= j * 2 ** (ell - 1) + 1
            for ell, d in enumerate(self.deltas, start=1)
        )
        next_delta = compute_delta(s + 1, j, n)
        return {
            "stage_degrees": per_stage,
            "budget": self.total_degree <= D < self.total_degree + next_delta,
            "cell_bound": cell_bound_holds(D, n, j, s, self.cn),
        }

    def to_record(self):
        return {
            "n": self.n,
            "j": self.j,
            "D": self.D,
            "deltas": list(self.deltas),
            "s": self.s,
            "total_degree": self.total_degree,
            "cn": mpmath.nstr(self.cn, 20),
        }


def compute_delta(ell, j, n):
    """Smallest positive integer delta with ``j * 2**(ell-1) <= delta**n / n!``.

    Exact integer binary search; no n-th roots.
    """
    if min(ell, j, n) < 1:
        raise ValueError("ell, j and n must be positive")
    target = factorial(n) * j * 2 ** (ell - 1)
    lo, hi = 1, 1
    while hi ** n < target:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** n >= target:
            hi = mid
        else:
            lo = mid + 1
    return lo


def cell_bound_constant(n):
    """``C_n = 2**(n+1) * n! / (2**(1/n) - 1)**n`` at high precision."""
    if n < 1:
        raise ValueError("n must be positive")
    with mpmath.workdps(_DPS):
        root = mpmath.power(2, mpmath.mpf(1) / n) - 1
        return mpmath.mpf(2) ** (n + 1) * factorial(n) / root ** n


def cell_bound_holds(D, n, j, s, cn=None):
    """Strict inequality ``1 / 2**s < C_n * j / D**n``, tested as ``D**n < C_n j 2**s``."""
    if cn is None:
        cn = cell_bound_constant(n)
    with mpmath.workdps(_DPS):
        return mpmath.mpf(D) ** n < cn * j * mpmath.mpf(2) ** s


def compute_schedule(params):
    """Degree schedule for ``params``.

    ``s`` is the largest stage count whose degrees fit into ``D``.  A budget
    below the first stage degree yields the empty schedule (one cell).
    """
    n, j, D = params.n, params.j, params.D
    deltas = []
    total = 0
    ell = 1
    while True:
        d = compute_delta(ell, j, n)
        if total + d > D:
            break
        deltas.append(d)
        total += d
        ell += 1
    return DegreeSchedule(n=n, j=j, D=D, deltas=tuple(deltas), cn=cell_bound_constant(n))
