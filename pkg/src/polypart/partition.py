"""Stagewise colored polynomial partitioning.

Stage ``ell`` takes the ``j * 2**(ell-1)`` current populations (one per
family and per cell built so far), lifts them along the first graded-lex
monomials of degree <= ``delta_ell`` and cuts all of them in half with one
hyperplane, i.e. one polynomial ``p_ell``.  After ``s`` stages every sign
pattern of ``(p_1, ..., p_s)`` holds at most ``|family| // 2**s`` points of each
family.  Points that land in the tolerance band of some ``p_ell`` are set aside
on the zero set and take no part in later stages.
"""

from dataclasses import dataclass, field

import numpy as np

from . import hamsandwich
from .errors import BoundViolation, SearchFailed
from .polyring import DEFAULT_TAU, Polynomial, monomial_basis, product, sign_many, veronese_lift_many
from .schedule import cell_bound_constant, cell_bound_holds, compute_schedule
from .varieties import Family, Kind, crossing_count, pattern_bits, patterns_met, witness_points

# extra seeds tried when a certified cut does not survive re-evaluation as a polynomial
_RECHECKS = 3


def choose_subspace(ell, j, n, delta):
    """First ``j * 2**(ell-1)`` non-constant monomials of degree <= delta (graded lex)."""
    need = j * 2 ** (ell - 1)
    basis = monomial_basis(n, delta)[1:]
    if len(basis) < need:
        raise ValueError(f"degree {delta} in {n} variables gives only {len(basis)} "
                         f"non-constant monomials, {need} needed")
    return basis[:need]


@dataclass
class CellTable:
    """Number of varieties of each family meeting each sign-pattern domain."""

    s: int
    counts: np.ndarray
    on_zero: list
    names: list = field(default_factory=list)

    def count(self, i, alpha):
        idx = 0
        for b in alpha:
            idx = 2 * idx + int(b)
        return int(self.counts[i, idx])

    def max_counts(self):
        return [int(row.max()) for row in self.counts]

    def to_record(self):
        rows = []
        for i, row in enumerate(self.counts):
            rows.append({
                "family": self.names[i] if i < len(self.names) else str(i),
                "counts": {"".join(map(str, pattern_bits(a, self.s))) or "-": int(c)
                           for a, c in enumerate(row)},
                "on_zero_set": list(self.on_zero[i]),
            })
        return {"s": self.s, "families": rows}


@dataclass
class StageRecord:
    ell: int
    delta: int
    monomials: list
    certificate: hamsandwich.BisectionCertificate

    def to_record(self):
        return {"ell": self.ell, "delta": self.delta,
                "monomials": [list(m) for m in self.monomials],
                "certificate": self.certificate.to_record()}


@dataclass
class PartitionResult:
    schedule: object
    polys: list
    cell_table: CellTable
    families: list
    stages: list
    tau: float
    seed: int

    @property
    def product_degree(self):
        # R[x] has no zero divisors, so degrees add up
        return sum(p.degree for p in self.polys)

    @property
    def on_zero_set(self):
        return self.cell_table.on_zero

    def product(self):
        if not self.polys:
            return Polynomial.constant(self.schedule.n, 1.0)
        return product(self.polys)

    def to_record(self):
        return {
            "schedule": self.schedule.to_record(),
            "tau": self.tau,
            "seed": self.seed,
            "polynomials": [p.to_records() for p in self.polys],
            "product_degree": self.product_degree,
            "stages": [st.to_record() for st in self.stages],
            "cell_table": self.cell_table.to_record(),
        }


def count_cells(families, polys, tau=DEFAULT_TAU):
    """Cell table of ``families`` against the sign patterns of ``polys``.

    With no polynomials there is a single cell and every variety is in it.
    """
    polys = list(polys)
    s = len(polys)
    counts = np.zeros((len(families), 2 ** s), dtype=np.int64)
    on_zero = []
    for i, fam in enumerate(families):
        zero = []
        if fam.is_points and polys:
            X = fam.points()
            S = np.column_stack([sign_many(p, X, tau) for p in polys])
            off = np.all(S != 0, axis=1)
            ids = (S[off] < 0).astype(np.int64) @ (2 ** np.arange(s - 1, -1, -1))
            np.add.at(counts[i], ids, 1)
            zero = [int(k) for k in np.flatnonzero(~off)]
        else:
            for k, gamma in enumerate(fam.varieties):
                met = patterns_met(gamma, polys, tau)
                for a in met:
                    counts[i, a] += 1
                if not met:
                    zero.append(k)
        on_zero.append(zero)
    return CellTable(s, counts, on_zero, [f.name for f in families])


def _stage_seed(seed, ell, attempt):
    return int(np.random.SeedSequence([seed, ell, attempt]).generate_state(1)[0])


def _build(clouds, families, params, seed, tau, config):
    schedule = compute_schedule(params)
    n, j = params.n, params.j
    cells = [np.zeros(len(X), dtype=np.int64) for X in clouds]
    polys, stages = [], []

    def partial():
        return PartitionResult(schedule, list(polys), count_cells(families, polys, tau),
                               families, list(stages), tau, seed)

    for ell, delta in enumerate(schedule.deltas, start=1):
        monos = choose_subspace(ell, j, n, delta)
        basis = [(0,) * n] + list(monos)
        lifted = [veronese_lift_many(X, monos) if len(X) else np.zeros((0, len(monos)))
                  for X in clouds]
        ncell = 2 ** (ell - 1)
        sets = [lifted[i][cells[i] == a] for i in range(j) for a in range(ncell)]
        for attempt in range(_RECHECKS + 1):
            try:
                if attempt == 0:
                    h, cert = hamsandwich.bisect(sets, seed=_stage_seed(seed, ell, 0),
                                                 config=config, tau=tau, t=len(monos))
                else:
                    h, cert = hamsandwich.bisect_search(sets, seed=_stage_seed(seed, ell, attempt),
                                                        config=config, tau=tau, t=len(monos))
            except SearchFailed as exc:
                raise SearchFailed(f"stage {ell}: {exc}", residual=exc.residual,
                                   partial=partial()) from None
            coef = np.concatenate([[h.offset], h.normal])
            p = Polynomial.from_basis(basis, coef / np.linalg.norm(coef))
            new_cells = []
            ok = True
            for i, X in enumerate(clouds):
                active = cells[i] >= 0
                sg = np.zeros(len(X), dtype=np.int8)
                if active.any():
                    sg[active] = sign_many(p, X[active], tau)
                nc = np.where(sg == 0, -1, 2 * cells[i] + (sg < 0))
                nc[~active] = -1
                for a in range(ncell):
                    half = int(np.count_nonzero(cells[i] == a)) // 2
                    if (np.count_nonzero(nc == 2 * a) > half
                            or np.count_nonzero(nc == 2 * a + 1) > half):
                        ok = False
                new_cells.append(nc)
            if ok:
                break
        else:
            raise SearchFailed(f"stage {ell}: certified cuts kept failing re-evaluation",
                               partial=partial())
        cells = new_cells
        polys.append(p)
        stages.append(StageRecord(ell, delta, list(monos), cert))
    return PartitionResult(schedule, polys, count_cells(families, polys, tau),
                           families, stages, tau, seed)


def _check_families(families, params):
    if len(families) != params.j:
        raise ValueError(f"{len(families)} families given but j = {params.j}")
    for fam in families:
        if fam.n != params.n:
            raise ValueError(f"family {fam.name!r} lives in dimension {fam.n}, not n = {params.n}")


def partition_points(families, params, seed=0, tau=DEFAULT_TAU, config=None):
    """Partition ``j`` point families; each cell gets at most ``|family| // 2**s`` points of each."""
    families = list(families)
    _check_families(families, params)
    for fam in families:
        if not fam.is_points:
            raise ValueError(f"family {fam.name!r} is not a point family")
    return _build([f.points() for f in families], families, params, seed, tau, config)


def representative_points(family):
    """One witness per variety (the middle one) used to steer the cuts."""
    reps = []
    for gamma in family.varieties:
        W = witness_points(gamma)
        reps.append(W[len(W) // 2])
    return np.array(reps)


def partition_families(families, params, seed=0, tau=DEFAULT_TAU, config=None):
    """Partition arbitrary families.

    Cuts are computed from one representative witness per variety; the cell
    table is then recounted on the full witness sets.  Only point families
    inherit the halving guarantee.
    """
    families = list(families)
    _check_families(families, params)
    return _build([representative_points(f) for f in families], families, params, seed, tau, config)


def verify_bounds(result, params, raise_on_violation=True):
    """Check the per-cell bounds of a partition.

    Point families must satisfy ``count <= |family| // 2**s`` in every cell.
    The scaled ratio ``max_count * D**n / (j |family|)`` is reported next to
    ``C_n``.  For curve families the maximal cell count and the largest number
    of sign runs along any curve (against ``product_degree + 1``) are
    reported without being enforced.
    """
    s = result.schedule.s
    cn = cell_bound_constant(params.n)
    table = result.cell_table
    families = []
    ok = True
    product_poly = None
    for i, fam in enumerate(result.families):
        size = len(fam)
        mx = int(table.counts[i].max()) if table.counts.shape[1] else 0
        rec = {"family": fam.name, "k": fam.k, "size": size, "max_count": mx,
               "on_zero_set": len(table.on_zero[i]),
               "ratio": mx * params.D ** params.n / (params.j * size)}
        rec["ratio_below_cn"] = rec["ratio"] < float(cn)
        if fam.is_points:
            rec["bound"] = size // 2 ** s
            rec["passed"] = mx <= rec["bound"]
            rec["accounted"] = int(table.counts[i].sum()) + len(table.on_zero[i]) == size
            ok = ok and rec["passed"] and rec["accounted"]
        else:
            curves = [g for g in fam.varieties if g.kind is Kind.PARAMETRIC and g.k == 1]
            if curves and result.polys:
                if product_poly is None:
                    product_poly = result.product()
                runs = [crossing_count(g, product_poly, tau=result.tau).count for g in curves]
                met = [len(patterns_met(g, result.polys, result.tau)) for g in curves]
                rec["max_crossing_runs"] = max(runs)
                rec["max_patterns_per_curve"] = max(met)
                rec["crossing_bound"] = result.product_degree + 1
                rec["within_crossing_bound"] = max(runs) <= result.product_degree + 1
        families.append(rec)
    report = {
        "s": s,
        "cn": float(cn),
        "cell_bound_inequality": cell_bound_holds(params.D, params.n, params.j, s, cn),
        "product_degree": result.product_degree,
        "product_degree_within_budget": result.product_degree <= params.D,
        "families": families,
        "passed": ok,
    }
    if not ok and raise_on_violation:
        raise BoundViolation("a point family exceeds its per-cell bound", report=report)
    return report


__all__ = [
    "CellTable", "Family", "PartitionResult", "StageRecord", "choose_subspace", "count_cells",
    "partition_families", "partition_points", "representative_points", "verify_bounds",
]
