"""Simultaneous bisection of finite point sets by one hyperplane.

Bisection is discrete: a hyperplane bisects a set of ``m`` points when each
open side holds at most ``m // 2`` of them.  Points inside the tolerance band
around the hyperplane count as on it and are unconstrained.

Two routes are provided.  ``bisect_exact`` enumerates hyperplanes spanned by
points of the union and serves as the oracle on small inputs.
``bisect_search`` minimises a smoothed imbalance with annealing and then
snaps the hyperplane through per-set medians; it scales to the dimensions the
partitioning driver needs.  Both return only exactly certified answers.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations

import numpy as np
from scipy.optimize import minimize

from .errors import NoCandidate, SearchFailed
from .polyring import DEFAULT_TAU

EXACT_CAP = 32
PERTURBATION = 1e-7


@dataclass(eq=False)
class Hyperplane:
    """``{y : normal . y + offset = 0}`` with a unit normal."""

    normal: np.ndarray
    offset: float

    def __post_init__(self):
        normal = np.asarray(self.normal, dtype=float).reshape(-1)
        norm = np.linalg.norm(normal)
        if not np.isfinite(norm) or norm == 0.0:
            raise ValueError("hyperplane normal must be nonzero")
        self.normal = normal / norm
        self.offset = float(self.offset) / float(norm)

    @classmethod
    def from_vector(cls, u):
        """From a coefficient vector ``(normal..., offset)``."""
        u = np.asarray(u, dtype=float)
        return cls(u[:-1], u[-1])

    @property
    def dim(self):
        return self.normal.shape[0]

    def values(self, Y):
        Y = np.asarray(Y, dtype=float).reshape(-1, self.dim)
        return Y @ self.normal + self.offset

    def negated(self):
        return Hyperplane(-self.normal, -self.offset)

    def to_record(self):
        return {"normal": self.normal.tolist(), "offset": self.offset}


@dataclass
class BisectionCertificate:
    """Per-set ``(pos_side, neg_side, on_plane)`` counts."""

    counts: list
    method: str = ""
    perturbation: float = 0.0

    @property
    def valid(self):
        return all(
            pos <= (pos + neg + on) // 2 and neg <= (pos + neg + on) // 2
            for pos, neg, on in self.counts
        )

    def to_record(self):
        rec = asdict(self)
        rec["counts"] = [list(c) for c in self.counts]
        rec["valid"] = self.valid
        return rec


def _as_sets(sets, t=None):
    out = []
    for S in sets:
        S = np.asarray(S, dtype=float)
        if S.size == 0:
            S = S.reshape(0, t if t is not None else 0)
        elif S.ndim == 1:
            S = S.reshape(-1, 1) if t in (None, 1) else S.reshape(1, -1)
        out.append(S)
    dims = {S.shape[1] for S in out if S.shape[0]}
    if t is None:
        if len(dims) != 1:
            raise ValueError("point sets must be non-empty and of one common dimension")
        t = dims.pop()
    elif dims - {t}:
        raise ValueError("point sets disagree with the stated dimension")
    out = [S.reshape(-1, t) for S in out]
    if len(out) > t:
        raise ValueError(f"{len(out)} sets cannot be bisected in dimension {t}")
    return out, t


def certify(hyperplane, sets, tau=DEFAULT_TAU):
    """Count points on each side of ``hyperplane`` for every set."""
    counts = []
    for S in sets:
        v = hyperplane.values(S)
        pos = int(np.count_nonzero(v > tau))
        neg = int(np.count_nonzero(v < -tau))
        counts.append((pos, neg, len(v) - pos - neg))
    return BisectionCertificate(counts)


def _data_scale(points):
    if points.shape[0] == 0:
        return 1.0
    scale = float(np.max(np.abs(points - points.mean(axis=0))))
    return scale if scale > 0 else 1.0


def _spanned_hyperplane(P):
    """Hyperplane through the ``t`` rows of ``P`` or None if they are affinely dependent."""
    t = P.shape[1]
    A = np.hstack([P, np.ones((t, 1))])
    _, sv, vt = np.linalg.svd(A)
    # A has t rows and t+1 columns; rank t means a one-dimensional null space
    if sv[-1] <= 1e-12 * max(sv[0], 1.0):
        return None
    u = vt[-1]
    if np.linalg.norm(u[:-1]) <= 1e-12 * np.linalg.norm(u):
        return None
    return Hyperplane.from_vector(u)


def _exact_candidates(union, t):
    for idx in combinations(range(union.shape[0]), t):
        h = _spanned_hyperplane(union[list(idx)])
        if h is not None:
            yield h
    for k in range(t):
        for c in np.unique(union[:, k]):
            normal = np.zeros(t)
            normal[k] = 1.0
            yield Hyperplane(normal, -c)


def bisect_exact(sets, tau=DEFAULT_TAU, cap=EXACT_CAP, seed=0, t=None):
    """Brute-force ham-sandwich cut.

    Tries the hyperplane through every affinely independent ``t``-subset of
    the union, then axis-parallel hyperplanes through data coordinates, and
    returns the first one that certifies.  If none does, candidates are
    re-enumerated once from a seeded perturbation of the points (still
    certified against the original points).  Raises ``NoCandidate`` if that
    fails too.
    """
    sets, t = _as_sets(sets, t)
    union = np.vstack(sets)
    if union.shape[0] > cap:
        raise ValueError(f"{union.shape[0]} points exceed the exact-enumeration cap {cap}")
    if union.shape[0] == 0:
        h = Hyperplane(np.eye(t)[0], 0.0)
        cert = certify(h, sets, tau)
        cert.method = "exact"
        return h, cert
    for perturb in (0.0, PERTURBATION * _data_scale(union)):
        base = union
        if perturb:
            rng = np.random.default_rng(seed)
            base = union + perturb * rng.uniform(-1.0, 1.0, size=union.shape)
        for h in _exact_candidates(base, t):
            cert = certify(h, sets, tau)
            if cert.valid:
                cert.method = "exact"
                cert.perturbation = float(perturb)
                return h, cert
    raise NoCandidate("no enumerated hyperplane bisects all sets; inputs are in degenerate position")


@dataclass(frozen=True)
class SearchConfig:
    restarts: int = 64
    iterations: int = 60
    sigmas: tuple = (1.0, 0.3, 0.1, 0.03, 0.01)
    snap_rounds: int = 40
    workers: int = field(default_factory=lambda: int(os.environ.get("POLYPART_THREADS", "1") or 1))

    def to_record(self):
        rec = asdict(self)
        rec["sigmas"] = list(self.sigmas)
        # worker count does not influence results; keep it out of reports
        rec.pop("workers")
        return rec


def _objective(u, groups, sigma):
    """Smoothed squared imbalance on the unit sphere, with its gradient."""
    norm = np.linalg.norm(u)
    w = u / norm
    total = 0.0
    grad_w = np.zeros_like(u)
    for Z1 in groups:
        if Z1.shape[0] == 0:
            continue
        th = np.tanh((Z1 @ w) / sigma)
        imbalance = th.sum()
        total += imbalance ** 2
        grad_w += 2.0 * imbalance * ((1.0 - th ** 2) @ Z1) / sigma
    # project the gradient onto the tangent space of the sphere
    grad_u = (grad_w - w * (w @ grad_w)) / norm
    return total, grad_u


def _median_residual(u, groups):
    """Per-set violation of the bisection condition and the constraint rows.

    With sorted values ``v`` of a set of size ``m`` the set is bisected exactly
    when ``v[(m - 1) // 2] <= 0 <= v[m // 2]``.  Odd sets therefore need their
    median on the plane; even sets only need 0 between the middle pair.
    """
    residual = []
    rows = []
    for Z1 in groups:
        m = Z1.shape[0]
        if m == 0:
            continue
        v = Z1 @ u
        order = np.argsort(v, kind="stable")
        lo, hi = order[(m - 1) // 2], order[m // 2]
        if m % 2:
            residual.append(v[lo])
            rows.append(Z1[lo])
        elif v[lo] > 0:
            residual.append(v[lo])
            rows.append(Z1[lo])
        elif v[hi] < 0:
            residual.append(v[hi])
            rows.append(Z1[hi])
        else:
            residual.append(0.0)
    return np.asarray(residual), rows


def _newton_target(u, rows):
    """Closest unit vector to ``u`` whose hyperplane contains every row point."""
    if not rows:
        return u
    A = np.array(rows)
    _, sv, vt = np.linalg.svd(A)
    rank = int(np.sum(sv > 1e-12 * max(sv[0], 1.0)))
    null = vt[rank:]
    if null.shape[0] == 0:
        return None
    v = null.T @ (null @ u)
    nv = np.linalg.norm(v)
    if nv <= 1e-12:
        v = null[0]
        nv = np.linalg.norm(v)
    return v / nv


def _polish(u, groups, sets, std, rounds, tau):
    """Damped Newton on the piecewise-linear median residual.

    The full step puts every unbalanced set's critical point on the plane;
    it is halved until the residual norm drops.  Returns a certified
    hyperplane or None.
    """
    res, rows = _median_residual(u, groups)
    merit = res @ res
    for _ in range(rounds):
        h = std.to_original(u)
        if h is not None:
            cert = certify(h, sets, tau)
            if cert.valid:
                return h, cert
        target = _newton_target(u, rows)
        if target is None:
            return None
        step = target - u
        lam = 1.0
        while lam > 1e-6:
            cand = u + lam * step
            cand /= np.linalg.norm(cand)
            cres, crows = _median_residual(cand, groups)
            cmerit = cres @ cres
            if cmerit < merit or lam == 1.0 and cmerit == 0.0:
                u, res, rows, merit = cand, cres, crows, cmerit
                break
            lam *= 0.5
        else:
            return None
    return None


class _Standardizer:
    """Affine rescaling of lifted coordinates to unit spread."""

    def __init__(self, union):
        self.mean = union.mean(axis=0)
        scale = union.std(axis=0)
        scale[scale == 0] = 1.0
        self.scale = scale

    def groups(self, sets):
        return [np.hstack([(S - self.mean) / self.scale, np.ones((S.shape[0], 1))]) for S in sets]

    def to_original(self, u):
        w = u[:-1] / self.scale
        b = u[-1] - w @ self.mean
        if np.linalg.norm(w) == 0:
            return None
        return Hyperplane(w, b)


def _run_restart(index, seed, sets, groups, std, config, tau):
    rng = np.random.default_rng([seed, index])
    t = groups[0].shape[1] - 1
    w = rng.standard_normal(t)
    w /= np.linalg.norm(w)
    union = np.vstack(groups)
    u = np.append(w, -np.median(union[:, :-1] @ w))
    best = np.inf
    for sigma in config.sigmas:
        res = minimize(_objective, u, args=(groups, sigma), jac=True, method="L-BFGS-B",
                       options={"maxiter": config.iterations})
        u = res.x / np.linalg.norm(res.x)
        best = min(best, float(res.fun))
        found = _polish(u, groups, sets, std, config.snap_rounds, tau)
        if found is not None:
            return found[0], found[1], best
    return None, None, best


def _center(h, sets, tau):
    """Slide the offset to the middle of the interval of offsets that still bisect every set.

    Sets of odd size pin the offset, so only all-even configurations move; in
    one dimension this turns any valid cut into the midpoint median cut.
    """
    lo, hi = -np.inf, np.inf
    for S in sets:
        if len(S) == 0:
            continue
        v = np.sort(S @ h.normal)
        m = len(v)
        lo = max(lo, -v[m // 2])
        hi = min(hi, -v[(m - 1) // 2])
    if not (np.isfinite(lo) and np.isfinite(hi)) or hi <= lo:
        return h, None
    moved = Hyperplane(h.normal, 0.5 * (lo + hi))
    cert = certify(moved, sets, tau)
    return (moved, cert) if cert.valid else (h, None)


def bisect_search(sets, seed=0, config=None, tau=DEFAULT_TAU, t=None):
    """Certified ham-sandwich cut found by multi-start smoothed search.

    Each restart anneals ``sum_i (sum_{x in S_i} tanh((n.x + b) / sigma))**2``
    over the unit sphere in standardized coordinates, and after every
    annealing level runs a damped Newton polish on the per-set median
    residual while checking the exact certificate.  The lowest-index
    certified restart wins, so the answer only depends on ``seed`` and
    ``config``.  A final centering step moves the offset away from the
    points whenever the set sizes leave room for it.
    """
    config = config or SearchConfig()
    sets, t = _as_sets(sets, t)
    union = np.vstack(sets)
    if union.shape[0] == 0:
        h = Hyperplane(np.eye(t)[0], 0.0)
        cert = certify(h, sets, tau)
        cert.method = "search"
        return h, cert
    std = _Standardizer(union)
    groups = std.groups(sets)
    best = np.inf

    def attempt(i):
        return _run_restart(i, seed, sets, groups, std, config, tau)

    workers = max(1, config.workers)
    batch = workers
    for start in range(0, config.restarts, batch):
        indices = range(start, min(start + batch, config.restarts))
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(attempt, indices))
        else:
            results = [attempt(i) for i in indices]
        for h, cert, res in results:
            best = min(best, res)
            if h is not None:
                h2, cert2 = _center(h, sets, tau)
                if cert2 is not None:
                    h, cert = h2, cert2
                cert.method = "search"
                return h, cert
    raise SearchFailed(f"no certified bisection after {config.restarts} restarts", residual=best)


def bisect(sets, seed=0, config=None, tau=DEFAULT_TAU, t=None):
    """Exact enumeration on small inputs (<= 32 points, dimension <= 3), search otherwise."""
    checked, dim = _as_sets(sets, t)
    total = sum(S.shape[0] for S in checked)
    if total <= EXACT_CAP and dim <= 3:
        try:
            return bisect_exact(checked, tau=tau, seed=seed, t=dim)
        except NoCandidate:
            pass
    return bisect_search(checked, seed=seed, config=config, tau=tau, t=dim)
