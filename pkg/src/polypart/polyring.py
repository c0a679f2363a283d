"""Sparse real polynomials in ``n`` variables.

A polynomial is a map from exponent tuples to nonzero coefficients.  Values
are immutable once built.  Evaluation comes in a scalar flavour (``evaluate``,
compensated summation) and a vectorised flavour (``evaluate_many``) used by the
partitioning code on whole point clouds.
"""

import enum
import math
from itertools import combinations_with_replacement
from types import MappingProxyType

import numpy as np

from .errors import DimensionMismatch, ParseError

DEFAULT_TAU = 1e-9


class Sign(enum.Enum):
    POS = 1
    NEG = -1
    ZERO = 0


class Polynomial:
    __slots__ = ("n", "_terms")

    def __init__(self, n, terms=None):
        if n < 1:
            raise ValueError("polynomials need at least one variable")
        self.n = n
        clean = {}
        for exps, coef in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != n or min(exps, default=0) < 0:
                raise ValueError(f"bad exponent vector {exps} for n={n}")
            if coef != 0:
                clean[exps] = clean.get(exps, 0) + coef
                if clean[exps] == 0:
                    del clean[exps]
        self._terms = MappingProxyType(clean)

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def constant(cls, n, c):
        return cls(n, {(0,) * n: c})

    @classmethod
    def variable(cls, n, i):
        """The coordinate function ``x_{i+1}`` (``i`` is zero-based)."""
        exps = [0] * n
        exps[i] = 1
        return cls(n, {tuple(exps): 1})

    @classmethod
    def from_basis(cls, basis, coefficients):
        """Linear combination of monomials (exponent tuples)."""
        basis = list(basis)
        if len(basis) != len(coefficients):
            raise DimensionMismatch("basis and coefficient vector differ in length")
        if not basis:
            raise ValueError("empty basis")
        terms = {}
        for mono, c in zip(basis, coefficients):
            terms[tuple(mono)] = terms.get(tuple(mono), 0) + float(c)
        return cls(len(basis[0]), terms)

    @property
    def terms(self):
        return self._terms

    @property
    def degree(self):
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def is_zero(self):
        return not self._terms

    def coefficient_scale(self):
        return max((abs(c) for c in self._terms.values()), default=0.0)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n == other.n and dict(self._terms) == dict(other._terms)

    def __hash__(self):
        return hash((self.n, frozenset(self._terms.items())))

    def __repr__(self):
        if not self._terms:
            return "Polynomial(0)"
        parts = []
        for exps in sorted(self._terms, key=_grlex_key):
            mono = "*".join(
                f"x{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(exps) if e
            )
            c = self._terms[exps]
            parts.append(f"{c!r}*{mono}" if mono else repr(c))
        return "Polynomial(" + " + ".join(parts) + ")"

    def _check(self, other):
        if self.n != other.n:
            raise DimensionMismatch(f"n={self.n} vs n={other.n}")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.n, other)
        self._check(other)
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, 0) + c
        return Polynomial(self.n, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.n, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return multiply(self, other)
        return Polynomial(self.n, {e: c * other for e, c in self._terms.items()})

    __rmul__ = __mul__

    def __pow__(self, k):
        result = Polynomial.constant(self.n, 1)
        for _ in range(k):
            result = multiply(result, self)
        return result

    def __call__(self, x):
        return evaluate(self, x)

    def to_records(self):
        """Serialisable list of ``{"exponents", "coefficient"}`` in graded lex order."""
        return [
            {"exponents": list(e), "coefficient": float(self._terms[e])}
            for e in sorted(self._terms, key=_grlex_key)
        ]

    @classmethod
    def from_records(cls, n, records, where="polynomial"):
        terms = {}
        for k, rec in enumerate(records):
            try:
                exps = tuple(int(e) for e in rec["exponents"])
                coef = float(rec["coefficient"])
            except (KeyError, TypeError, ValueError) as exc:
                raise ParseError(f"{where}[{k}]: malformed term record ({exc})") from None
            if len(exps) != n:
                raise ParseError(f"{where}[{k}]: expected {n} exponents, got {len(exps)}")
            if min(exps, default=0) < 0:
                raise ParseError(f"{where}[{k}]: negative exponent")
            terms[exps] = terms.get(exps, 0.0) + coef
        return cls(n, terms)


def _grlex_key(exps):
    # constant first, then by degree; inside a degree x1 before x2 (descending lex)
    return (sum(exps), tuple(-e for e in exps))


def monomial_basis(n, delta):
    """All exponent tuples of total degree <= delta, graded lex, constant first.

    The length is ``comb(delta + n, n)``.
    """
    if n < 1 or delta < 0:
        raise ValueError("need n >= 1 and delta >= 0")
    out = []
    for d in range(delta + 1):
        block = []
        for combo in combinations_with_replacement(range(n), d):
            exps = [0] * n
            for i in combo:
                exps[i] += 1
            block.append(tuple(exps))
        block.sort(reverse=True)
        out.extend(block)
    return out


def _as_point(p, x):
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.shape[0] != p.n:
        raise DimensionMismatch(f"point has {x.shape[0]} coordinates, polynomial has n={p.n}")
    return x


def evaluate(p, x):
    x = _as_point(p, x)
    return math.fsum(c * math.prod(x[i] ** e for i, e in enumerate(exps) if e)
                     for exps, c in p.terms.items())


def monomial_values(X, monos):
    """Matrix of monomial values: row per point, column per monomial."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    out = np.ones((X.shape[0], len(monos)))
    for k, exps in enumerate(monos):
        for i, e in enumerate(exps):
            if e:
                out[:, k] *= X[:, i] ** e
    return out


def evaluate_many(p, X):
    """Evaluate ``p`` on each row of ``X``; returns a float array."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if X.shape[1] != p.n:
        raise DimensionMismatch(f"points have {X.shape[1]} coordinates, polynomial has n={p.n}")
    if p.is_zero():
        return np.zeros(X.shape[0])
    monos = list(p.terms)
    coefs = np.array([p.terms[m] for m in monos], dtype=float)
    return monomial_values(X, monos) @ coefs


def _classify(v, tau):
    if v > tau:
        return Sign.POS
    if v < -tau:
        return Sign.NEG
    return Sign.ZERO


def sign_region(p, x, tau=DEFAULT_TAU):
    """POS when ``p(x) > tau``, NEG when ``p(x) < -tau``, ZERO otherwise."""
    if tau < 0:
        raise ValueError("tau must be non-negative")
    return _classify(evaluate(p, x), tau)


def sign_many(p, X, tau=DEFAULT_TAU):
    """Vectorised ``sign_region``: an int8 array of +1, -1, 0."""
    v = evaluate_many(p, X)
    out = np.zeros(v.shape, dtype=np.int8)
    out[v > tau] = 1
    out[v < -tau] = -1
    return out


def multiply(p, q):
    p._check(q)
    terms = {}
    for e1, c1 in p.terms.items():
        for e2, c2 in q.terms.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            terms[e] = terms.get(e, 0) + c1 * c2
    return Polynomial(p.n, terms)


def product(polys):
    polys = list(polys)
    if not polys:
        raise ValueError("empty product")
    result = polys[0]
    for q in polys[1:]:
        result = multiply(result, q)
    return result


def veronese_lift(x, monos):
    """Values of the (non-constant) monomials ``monos`` at the point ``x``."""
    for exps in monos:
        if not any(exps):
            raise ValueError("constant monomial in lifting basis")
    return monomial_values(np.asarray(x, dtype=float).reshape(1, -1), monos)[0]


def veronese_lift_many(X, monos):
    for exps in monos:
        if not any(exps):
            raise ValueError("constant monomial in lifting basis")
    return monomial_values(X, monos)


def random_polynomial(n, degree, rng, scale=1.0):
    """Dense polynomial of the given degree with normal coefficients."""
    basis = monomial_basis(n, degree)
    return Polynomial.from_basis(basis, scale * rng.standard_normal(len(basis)))
