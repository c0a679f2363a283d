"""The balancing map on tuples of partitioning polynomials.

A tuple ``y = (p_1, ..., p_s)`` is stored as unit coefficient vectors over the
per-stage bases (constant plus ``choose_subspace`` monomials).  For every
family ``phi`` lists, per sign pattern ``alpha``, how many varieties meet the
domain of ``alpha`` minus the average over all ``2**s`` patterns.  Flipping
the sign of ``p_ell`` permutes patterns by toggling bit ``ell``, which is the
equivariance checked by ``check_equivariance``.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .errors import GenericPositionViolated
from .partition import choose_subspace, count_cells
from .polyring import DEFAULT_TAU, Polynomial, evaluate_many, monomial_values
from .schedule import compute_schedule
from .varieties import pattern_index, witness_points


@dataclass(eq=False)
class TupleY:
    n: int
    bases: list
    coefficients: list

    def __post_init__(self):
        coefs = []
        for basis, c in zip(self.bases, self.coefficients):
            c = np.asarray(c, dtype=float).reshape(-1)
            if c.shape[0] != len(basis):
                raise ValueError("coefficient vector does not match its basis")
            norm = np.linalg.norm(c)
            if norm == 0:
                raise ValueError("coefficient vectors must be nonzero")
            coefs.append(c / norm)
        self.coefficients = coefs

    @classmethod
    def _unchecked(cls, n, bases, coefficients):
        # negating a unit vector keeps it unit; renormalising could move the last bit
        y = object.__new__(cls)
        y.n, y.bases, y.coefficients = n, bases, list(coefficients)
        return y

    @property
    def s(self):
        return len(self.bases)

    @classmethod
    def stage_bases(cls, schedule):
        n, j = schedule.n, schedule.j
        return [[(0,) * n] + choose_subspace(ell, j, n, d)
                for ell, d in enumerate(schedule.deltas, start=1)]

    @classmethod
    def random(cls, schedule, rng):
        bases = cls.stage_bases(schedule)
        return cls(schedule.n, bases, [rng.standard_normal(len(b)) for b in bases])

    @classmethod
    def from_polys(cls, polys, bases):
        coefs = [[p.terms.get(tuple(m), 0.0) for m in basis] for p, basis in zip(polys, bases)]
        return cls(polys[0].n, bases, coefs)

    def polys(self):
        return [Polynomial.from_basis(b, c) for b, c in zip(self.bases, self.coefficients)]

    def to_vector(self):
        return np.concatenate(self.coefficients)

    def with_vector(self, vec):
        out, k = [], 0
        for b in self.bases:
            out.append(vec[k:k + len(b)])
            k += len(b)
        return TupleY(self.n, self.bases, out)

    def to_record(self):
        return [{"basis": [list(m) for m in b], "coefficients": c.tolist()}
                for b, c in zip(self.bases, self.coefficients)]


@dataclass(eq=False)
class PhiValue:
    """Integer cell counts per family and pattern; ``values`` are their deviations from the mean."""

    counts: np.ndarray

    @property
    def values(self):
        # division by 2**s is exact in binary floating point
        c = self.counts.astype(float)
        return c - c.sum(axis=1, keepdims=True) / c.shape[1]

    def residual(self):
        v = self.values
        return float(np.abs(v).max()) if v.size else 0.0

    def __eq__(self, other):
        return isinstance(other, PhiValue) and np.array_equal(self.counts, other.counts)


def phi(y, families, tau=DEFAULT_TAU):
    return PhiValue(count_cells(families, y.polys(), tau).counts)


def phi_from_counts(counts):
    return PhiValue(np.atleast_2d(np.asarray(counts, dtype=np.int64)))


def act(y, beta):
    """Negate the stages where ``beta`` has a 1."""
    if len(beta) != y.s:
        raise ValueError("group element length must equal s")
    return TupleY._unchecked(y.n, y.bases, [-c if b else c for c, b in zip(y.coefficients, beta)])


def act_codomain(value, beta):
    """Move the coordinate of pattern ``alpha`` to pattern ``alpha + beta`` (mod 2)."""
    shift = pattern_index(beta)
    idx = np.arange(value.counts.shape[1])
    out = np.empty_like(value.counts)
    out[:, idx ^ shift] = value.counts[:, idx]
    return PhiValue(out)


def in_generic_position(y, families, tau=DEFAULT_TAU):
    polys = y.polys()
    for fam in families:
        for gamma in fam.varieties:
            W = witness_points(gamma)
            for p in polys:
                if np.any(np.abs(evaluate_many(p, W)) <= tau):
                    return False
    return True


def check_equivariance(y, families, beta, tau=DEFAULT_TAU):
    if not in_generic_position(y, families, tau):
        raise GenericPositionViolated("a witness point lies in the tolerance band of some p_ell")
    return phi(act(y, beta), families, tau) == act_codomain(phi(y, families, tau), beta)


def _smoothed_counts(vec, y, stage_values, fam_slices, sigma):
    """Soft cell counts: each witness contributes prod_ell sigmoid(+-p_ell / sigma)."""
    s = y.s
    k = 0
    probs = []
    for M, basis in zip(stage_values, y.bases):
        c = vec[k:k + len(basis)]
        k += len(basis)
        c = c / np.linalg.norm(c)
        probs.append(0.5 * (1.0 + np.tanh((M @ c) / sigma)))
    P = np.ones((stage_values[0].shape[0], 2 ** s))
    for a in range(2 ** s):
        for ell in range(s):
            bit = (a >> (s - 1 - ell)) & 1
            P[:, a] *= (1.0 - probs[ell]) if bit else probs[ell]
    out = []
    for rows in fam_slices:
        soft = []
        for lo, hi in rows:
            # probability that some witness of the variety hits each cell
            soft.append(1.0 - np.prod(1.0 - P[lo:hi], axis=0))
        out.append(np.sum(soft, axis=0) if soft else np.zeros(2 ** s))
    return np.array(out)


def search_phi_zero(families, params, seed=0, budget=16, tau=DEFAULT_TAU,
                    sigmas=(0.3, 0.1, 0.03, 0.01), iterations=100, init=None,
                    allow_zero_set=False):
    """Best-effort search for a tuple that balances every family across all cells.

    Minimises a sigmoid-smoothed version of ``|phi|**2`` with ``budget``
    random restarts (plus ``init`` if given) and returns the tuple with the
    smallest exact residual ``max |phi|`` together with that residual and the
    trace of residuals per restart.

    Tuples that put a witness into the tolerance band of some ``p_ell`` are
    rejected unless ``allow_zero_set`` is set: dropping varieties onto the
    zero set would make any family trivially balanced.
    """
    families = list(families)
    schedule = compute_schedule(params)
    if schedule.s < 1:
        raise ValueError("the degree budget allows no partitioning stage (s = 0)")
    rng = np.random.default_rng(seed)
    starts = ([init] if init is not None else []) + [TupleY.random(schedule, rng) for _ in range(budget)]
    if not families or all(len(f) == 0 for f in families):
        return starts[0], 0.0, [0.0]

    witnesses, fam_slices, k = [], [], 0
    for fam in families:
        rows = []
        for gamma in fam.varieties:
            W = witness_points(gamma)
            witnesses.append(W)
            rows.append((k, k + len(W)))
            k += len(W)
        fam_slices.append(rows)
    W = np.vstack(witnesses)
    template = starts[0]
    stage_values = [monomial_values(W, b) for b in template.bases]
    # unit RMS per monomial column so the sigmoid widths mean the same everywhere
    norms = [np.linalg.norm(M, axis=0) / np.sqrt(len(W)) for M in stage_values]
    norms = [np.where(nm == 0, 1.0, nm) for nm in norms]
    scaled = [M / nm for M, nm in zip(stage_values, norms)]

    def to_internal(y):
        return np.concatenate([c * nm for c, nm in zip(y.coefficients, norms)])

    def to_tuple(vec):
        out, k = [], 0
        for b, nm in zip(template.bases, norms):
            out.append(vec[k:k + len(b)] / nm)
            k += len(b)
        return TupleY(template.n, template.bases, out)

    def objective(vec, sigma):
        soft = _smoothed_counts(vec, template, scaled, fam_slices, sigma)
        dev = soft - soft.mean(axis=1, keepdims=True)
        return float(np.sum(dev ** 2))

    def score(y):
        if not allow_zero_set and not in_generic_position(y, families, tau):
            return np.inf
        return phi(y, families, tau).residual()

    best, best_res, trace = starts[0], np.inf, []
    for y0 in starts:
        vec = to_internal(y0)
        y = y0
        res = score(y)
        for sigma in sigmas:
            if res == 0:
                break
            opt = minimize(objective, vec, args=(sigma,), method="Powell" if len(vec) <= 4 else "L-BFGS-B",
                           options={"maxiter": iterations})
            cand = to_tuple(opt.x)
            cres = score(cand)
            vec = opt.x
            if cres <= res:
                y, res = cand, cres
        trace.append(res)
        if res < best_res:
            best, best_res = y, res
        if best_res == 0:
            break
    return best, best_res, trace
