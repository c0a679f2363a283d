"""Families of varieties and the sign-pattern indicator.

A variety is represented by finitely many witness points: the point itself,
deterministic samples of a parametrisation, or user supplied seed points on
an implicitly defined set.  Whether a variety meets a sign-pattern domain is
decided on those witnesses, so a positive answer is certain and a negative
answer is only as good as the sampling.
"""

import enum
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional

import numpy as np
from scipy.stats import qmc

from .polyring import DEFAULT_TAU, evaluate_many, sign_many


class Kind(enum.Enum):
    POINT = "point"
    PARAMETRIC = "parametric"
    IMPLICIT = "implicit"


@dataclass(eq=False)
class Variety:
    kind: Kind
    k: int
    n: int
    point: Optional[np.ndarray] = None
    # parametric: map from an (N, k) parameter array to (N, n) points
    param: Optional[Callable] = None
    box: Optional[np.ndarray] = None
    samples: int = 1
    equations: list = field(default_factory=list)
    seeds: Optional[np.ndarray] = None
    degree: Optional[int] = None
    # serialisable description of a shipped parametric kind
    description: Optional[dict] = None

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("sample count must be at least 1")
        if self.kind is Kind.POINT:
            self.point = np.asarray(self.point, dtype=float).reshape(-1)
            if self.k != 0:
                raise ValueError("a point variety has k = 0")
            self.n = self.point.shape[0]
        elif self.kind is Kind.PARAMETRIC:
            self.box = np.asarray(self.box, dtype=float).reshape(self.k, 2)
        elif self.kind is Kind.IMPLICIT:
            self.seeds = np.atleast_2d(np.asarray(self.seeds, dtype=float))
            if self.seeds.shape[0] == 0 or self.seeds.size == 0:
                raise ValueError("implicit varieties need at least one seed point")

    @classmethod
    def from_point(cls, coords):
        coords = np.asarray(coords, dtype=float).reshape(-1)
        return cls(Kind.POINT, 0, coords.shape[0], point=coords)

    @classmethod
    def line(cls, point, direction, t_range=(-1.0, 1.0), samples=64):
        point = np.asarray(point, dtype=float).reshape(-1)
        direction = np.asarray(direction, dtype=float).reshape(-1)
        if point.shape != direction.shape:
            raise ValueError("line point and direction differ in dimension")

        def param(T):
            return point + T[:, :1] * direction

        description = {"type": "line", "point": point.tolist(), "direction": direction.tolist(),
                "t_range": [float(t_range[0]), float(t_range[1])], "samples": samples}
        return cls(Kind.PARAMETRIC, 1, point.shape[0], param=param, box=[t_range],
                   samples=samples, degree=1, description=description)

    @classmethod
    def circle(cls, center, radius, basis=None, samples=64):
        """Circle ``center + r (cos t u + sin t v)``; ``basis`` = (u, v) is needed for n >= 3."""
        center = np.asarray(center, dtype=float).reshape(-1)
        n = center.shape[0]
        if basis is None:
            if n != 2:
                raise ValueError("circles in dimension >= 3 need a plane basis")
            basis = np.eye(2)
        u, v = (np.asarray(b, dtype=float).reshape(-1) for b in basis)

        def param(T):
            t = T[:, :1]
            return center + radius * (np.cos(t) * u + np.sin(t) * v)

        description = {"type": "circle", "center": center.tolist(), "radius": float(radius),
                "basis": [u.tolist(), v.tolist()], "samples": samples}
        # closed curve: drop the duplicated endpoint 2*pi
        box = [(0.0, 2 * np.pi * (1 - 1.0 / samples))] if samples > 1 else [(0.0, 0.0)]
        return cls(Kind.PARAMETRIC, 1, n, param=param, box=box, samples=samples,
                   degree=2, description=description)

    @classmethod
    def graph(cls, coefficients, t_range=(-1.0, 1.0), samples=64):
        """Polynomial curve ``t -> (t, f_2(t), ..., f_n(t))``.

        ``coefficients[i]`` lists the coefficients of ``f_{i+2}`` from the
        constant term upwards.
        """
        coefs = [np.asarray(c, dtype=float) for c in coefficients]

        def param(T):
            t = T[:, 0]
            cols = [t] + [np.polynomial.polynomial.polyval(t, c) for c in coefs]
            return np.column_stack(cols)

        description = {"type": "graph", "coefficients": [c.tolist() for c in coefs],
                "t_range": [float(t_range[0]), float(t_range[1])], "samples": samples}
        degree = max([len(c) - 1 for c in coefs] + [1])
        return cls(Kind.PARAMETRIC, 1, len(coefs) + 1, param=param, box=[t_range],
                   samples=samples, degree=degree, description=description)

    @classmethod
    def implicit(cls, equations, seeds, k, tau=DEFAULT_TAU, check=True):
        equations = list(equations)
        if not equations:
            raise ValueError("an implicit variety needs at least one equation")
        seeds = np.atleast_2d(np.asarray(seeds, dtype=float))
        n = equations[0].n
        if check:
            for eq in equations:
                bad = np.abs(evaluate_many(eq, seeds)) > tau
                if bad.any():
                    raise ValueError(f"seed point {seeds[bad.argmax()].tolist()} is not on the variety")
        return cls(Kind.IMPLICIT, k, n, equations=equations, seeds=seeds,
                   degree=max(eq.degree for eq in equations))

    def parameters(self, count=None):
        count = self.samples if count is None else count
        lo, hi = self.box[:, 0], self.box[:, 1]
        if self.k == 1:
            return np.linspace(lo[0], hi[0], count).reshape(-1, 1)
        unit = qmc.Halton(d=self.k, scramble=False).random(count)
        return lo + unit * (hi - lo)


@dataclass(eq=False)
class Family:
    name: str
    varieties: list

    def __post_init__(self):
        self.varieties = list(self.varieties)
        if not self.varieties:
            raise ValueError(f"family {self.name!r} is empty")
        ks = {v.k for v in self.varieties}
        if len(ks) != 1:
            raise ValueError(f"family {self.name!r} mixes dimensions {sorted(ks)}")
        ns = {v.n for v in self.varieties}
        if len(ns) != 1:
            raise ValueError(f"family {self.name!r} mixes ambient dimensions {sorted(ns)}")

    @classmethod
    def from_points(cls, name, points):
        return cls(name, [Variety.from_point(p) for p in np.atleast_2d(points)])

    @property
    def k(self):
        return self.varieties[0].k

    @property
    def n(self):
        return self.varieties[0].n

    @property
    def is_points(self):
        return all(v.kind is Kind.POINT for v in self.varieties)

    def points(self):
        """Coordinates of a point family as an (N, n) array."""
        if not self.is_points:
            raise ValueError(f"family {self.name!r} is not a point family")
        return np.array([v.point for v in self.varieties])

    def __len__(self):
        return len(self.varieties)


def witness_points(gamma):
    if gamma.kind is Kind.POINT:
        return gamma.point.reshape(1, -1)
    if gamma.kind is Kind.PARAMETRIC:
        return np.asarray(gamma.param(gamma.parameters()), dtype=float)
    return gamma.seeds


def pattern_signs(W, polys, tau=DEFAULT_TAU):
    """Sign matrix: one row per witness, one column per polynomial."""
    W = np.atleast_2d(W)
    return np.column_stack([sign_many(p, W, tau) for p in polys]) if polys else np.zeros((W.shape[0], 0), np.int8)


def pattern_index(bits):
    """Integer id of a sign pattern, first bit most significant."""
    idx = 0
    for b in bits:
        idx = 2 * idx + int(b)
    return idx


def pattern_bits(index, s):
    return tuple((index >> (s - 1 - ell)) & 1 for ell in range(s))


def patterns_met(gamma, polys, tau=DEFAULT_TAU, witnesses=None):
    """Set of pattern ids whose domain contains some witness of ``gamma``."""
    W = witness_points(gamma) if witnesses is None else witnesses
    S = pattern_signs(W, polys, tau)
    off_zero = np.all(S != 0, axis=1)
    s = S.shape[1]
    weights = 2 ** np.arange(s - 1, -1, -1)
    ids = ((S[off_zero] < 0).astype(np.int64) @ weights) if s else np.zeros(int(off_zero.sum()), np.int64)
    return set(int(i) for i in np.unique(ids))


def indicator(gamma, polys, alpha, tau=DEFAULT_TAU):
    """1 when some witness of ``gamma`` lies in the sign-pattern domain of ``alpha``.

    Bit 0 asks for a positive value of the matching polynomial, bit 1 for a
    negative one.
    """
    polys = list(polys)
    if not polys:
        raise ValueError("need at least one polynomial")
    if len(alpha) != len(polys):
        raise ValueError("sign pattern length must equal the number of polynomials")
    return int(pattern_index(alpha) in patterns_met(gamma, polys, tau))


class Crossing(NamedTuple):
    count: int
    roots: tuple
    degenerate: bool


def crossing_count(gamma, P, resolution=1024, tau=DEFAULT_TAU, xtol=1e-9):
    """Number of maximal sign runs of ``P`` along a sampled curve.

    Samples inside the tolerance band separate runs; so does a strict sign
    change between neighbouring samples, whose location is refined by
    bisection to ``xtol`` in parameter space and reported in ``roots``.  A
    curve lying entirely in the band is reported as degenerate with count 0.
    """
    if gamma.kind is not Kind.PARAMETRIC or gamma.k != 1:
        raise ValueError("crossing counts need a one-dimensional parametric curve")
    T = np.linspace(gamma.box[0, 0], gamma.box[0, 1], max(2, resolution))

    def value(t):
        return evaluate_many(P, gamma.param(np.atleast_1d(t).reshape(-1, 1)))

    v = value(T)
    sg = np.where(v > tau, 1, np.where(v < -tau, -1, 0))
    if not sg.any():
        return Crossing(0, (), True)
    runs = 0
    roots = []
    prev = 0
    for i, c in enumerate(sg):
        if c == 0:
            prev = 0
            continue
        if prev == 0:
            runs += 1
        elif c != prev:
            runs += 1
            a, b = T[i - 1], T[i]
            fa = v[i - 1]
            while b - a > xtol:
                mid = 0.5 * (a + b)
                fm = value(mid)[0]
                if (fm > 0) == (fa > 0):
                    a, fa = mid, fm
                else:
                    b = mid
            roots.append(0.5 * (a + b))
        prev = c
    return Crossing(runs, tuple(roots), False)

