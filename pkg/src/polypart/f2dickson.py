"""Polynomials over the two-element field and the top Dickson obstruction.

An ``F2Poly`` is a set of exponent vectors; a monomial is present exactly when
its coefficient is 1, so addition is symmetric difference.  The question
settled here is whether the ``j``-th power of

    q = prod over nonzero a in {0,1}^s of (a_1 u_1 + ... + a_s u_s)

survives reduction modulo the monomial ideal generated by
``u_ell ** (j * 2**(ell-1) + 1)``.  It does, witnessed by the monomial
``u_1**j u_2**(2j) ... u_s**(j 2**(s-1))``.
"""

from dataclasses import dataclass
from itertools import permutations, product

from .errors import BudgetExceeded, DimensionMismatch

TERM_BUDGET = 10 ** 7
MAX_S = 6


class F2Poly:
    __slots__ = ("s", "terms")

    def __init__(self, s, terms=()):
        self.s = s
        terms = frozenset(tuple(int(e) for e in t) for t in terms)
        for t in terms:
            if len(t) != s or min(t, default=0) < 0:
                raise ValueError(f"bad exponent vector {t} for s={s}")
        self.terms = terms

    @classmethod
    def variable(cls, s, i):
        """``u_{i+1}``."""
        e = [0] * s
        e[i] = 1
        return cls(s, [tuple(e)])

    @classmethod
    def one(cls, s):
        return cls(s, [(0,) * s])

    @classmethod
    def linear_form(cls, coeffs):
        """``a_1 u_1 + ... + a_s u_s`` for a 0/1 vector ``coeffs``."""
        s = len(coeffs)
        return cls(s, [tuple(int(i == k) for i in range(s)) for k, a in enumerate(coeffs) if a])

    def is_zero(self):
        return not self.terms

    @property
    def degree(self):
        return max((sum(t) for t in self.terms), default=-1)

    def __len__(self):
        return len(self.terms)

    def __contains__(self, monomial):
        return tuple(monomial) in self.terms

    def __eq__(self, other):
        return isinstance(other, F2Poly) and self.s == other.s and self.terms == other.terms

    def __hash__(self):
        return hash((self.s, self.terms))

    def __add__(self, other):
        return add(self, other)

    def __mul__(self, other):
        return multiply(self, other)

    def __pow__(self, k):
        return power(self, k)

    def __repr__(self):
        if not self.terms:
            return "F2Poly(0)"
        return "F2Poly(" + " + ".join(format_monomial(t) for t in sorted(self.terms, reverse=True)) + ")"


def format_monomial(exps):
    parts = [f"u{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(exps) if e]
    return "*".join(reversed(parts)) or "1"


def _check(a, b):
    if a.s != b.s:
        raise DimensionMismatch(f"s={a.s} vs s={b.s}")


def add(a, b):
    _check(a, b)
    return F2Poly(a.s, a.terms ^ b.terms)


def multiply(a, b, budget=TERM_BUDGET):
    _check(a, b)
    out = set()
    for x in a.terms:
        for y in b.terms:
            m = tuple(i + k for i, k in zip(x, y))
            # coefficients live in F2: a second occurrence cancels the first
            if m in out:
                out.remove(m)
            else:
                out.add(m)
        if len(out) > budget:
            raise BudgetExceeded(f"intermediate product exceeds {budget} terms")
    return F2Poly(a.s, out)


def square(a):
    """Frobenius: squaring doubles every exponent, cross terms vanish."""
    return F2Poly(a.s, (tuple(2 * e for e in t) for t in a.terms))


def power(a, k, budget=TERM_BUDGET):
    if k < 0:
        raise ValueError("negative exponent")
    result = F2Poly.one(a.s)
    base = a
    while k:
        if k & 1:
            result = multiply(result, base, budget)
        k >>= 1
        if k:
            base = square(base)
    return result


def dickson_product(s, budget=TERM_BUDGET, max_s=MAX_S):
    """Top Dickson polynomial as the product of all nonzero linear forms."""
    if s < 1:
        raise ValueError("s must be positive")
    if s > max_s:
        raise BudgetExceeded(f"s = {s} is above the configured cap {max_s}")
    q = F2Poly.one(s)
    for a in product((0, 1), repeat=s):
        if any(a):
            q = multiply(q, F2Poly.linear_form(a), budget)
    return q


def dickson_symmetric(s):
    """Top Dickson polynomial as ``sum over permutations pi of prod_i u_pi(i) ** 2**(s-i)``."""
    if s < 1:
        raise ValueError("s must be positive")
    terms = []
    for perm in permutations(range(s)):
        e = [0] * s
        for pos, var in enumerate(perm):
            e[var] = 2 ** (s - 1 - pos)
        terms.append(tuple(e))
    return F2Poly(s, terms)


@dataclass(frozen=True)
class MonomialIdeal:
    """Ideal generated by the pure powers ``u_ell ** thresholds[ell-1]``."""

    thresholds: tuple

    def __post_init__(self):
        if any(e < 1 for e in self.thresholds):
            raise ValueError("generator exponents must be at least 1")

    @property
    def s(self):
        return len(self.thresholds)

    def contains_monomial(self, exps):
        return any(e >= t for e, t in zip(exps, self.thresholds))


def index_ideal(s, j):
    """Generators ``u_ell ** (j 2**(ell-1) + 1)`` for ell = 1..s."""
    return MonomialIdeal(tuple(j * 2 ** (ell - 1) + 1 for ell in range(1, s + 1)))


def reduce_mod_ideal(p, ideal):
    """Normal form modulo a monomial ideal: drop every term lying in the ideal."""
    if p.s != ideal.s:
        raise DimensionMismatch(f"s={p.s} vs ideal in {ideal.s} variables")
    return F2Poly(p.s, (t for t in p.terms if not ideal.contains_monomial(t)))


def witness_monomial(s, j):
    """``u_1**j u_2**(2j) ... u_s**(j 2**(s-1))`` as an exponent tuple."""
    return tuple(j * 2 ** (ell - 1) for ell in range(1, s + 1))


@dataclass(frozen=True)
class ObstructionResult:
    s: int
    j: int
    nonzero: bool
    witness_present: bool
    surviving_terms: int
    witness: tuple
    remainder: F2Poly

    def to_record(self):
        return {
            "s": self.s,
            "j": self.j,
            "nonzero": self.nonzero,
            "witness_present": self.witness_present,
            "surviving_terms": self.surviving_terms,
            "witness": format_monomial(self.witness),
            "remainder": sorted(format_monomial(t) for t in self.remainder.terms),
        }


def obstruction_check(s, j, budget=TERM_BUDGET, max_s=MAX_S):
    if j < 1:
        raise ValueError("j must be positive")
    qj = power(dickson_product(s, budget, max_s), j, budget)
    rem = reduce_mod_ideal(qj, index_ideal(s, j))
    w = witness_monomial(s, j)
    return ObstructionResult(s, j, not rem.is_zero(), w in rem, len(rem), w, rem)
