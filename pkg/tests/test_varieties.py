import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from polypart.polyring import Polynomial, product, random_polynomial
from polypart.varieties import (Family, Kind, Variety, crossing_count, indicator, pattern_bits,
                                pattern_index, patterns_met, witness_points)

X1 = Polynomial.variable(2, 0)
X2 = Polynomial.variable(2, 1)


def test_witness_examples():
    assert witness_points(Variety.from_point((1, 2))).tolist() == [[1, 2]]
    W = witness_points(Variety.line((0, 0), (1, 0), (-2, 2), samples=5))
    assert W.tolist() == [[-2, 0], [-1, 0], [0, 0], [1, 0], [2, 0]]
    circle = Variety.implicit([X1 * X1 + X2 * X2 - 1], [(1, 0), (0, 1)], k=1)
    assert witness_points(circle).tolist() == [[1, 0], [0, 1]]


def test_implicit_seed_validation():
    with pytest.raises(ValueError):
        Variety.implicit([X1 * X1 + X2 * X2 - 1], [(1, 1)], k=1)


def test_circle_samples_lie_on_circle():
    c = Variety.circle((1, -1), 2.0, samples=32)
    W = witness_points(c)
    assert len(np.unique(W.round(12), axis=0)) == 32
    np.testing.assert_allclose(np.linalg.norm(W - (1, -1), axis=1), 2.0)
    c3 = Variety.circle((0, 0, 0), 1.0, basis=[(1, 0, 0), (0, 0, 1)], samples=8)
    assert np.allclose(witness_points(c3)[:, 1], 0)
    with pytest.raises(ValueError):
        Variety.circle((0, 0, 0), 1.0)


def test_graph_curve():
    g = Variety.graph([[0, 0, 1]], (-1, 1), samples=3)
    assert witness_points(g).tolist() == [[-1, 1], [0, 0], [1, 1]]


def test_two_parameter_surface_uses_halton_samples():
    def param(T):
        return np.column_stack([T[:, 0], T[:, 1], T[:, 0] * T[:, 1]])
    v = Variety(Kind.PARAMETRIC, 2, 3, param=param, box=[(0, 1), (0, 1)], samples=16)
    W = witness_points(v)
    assert W.shape == (16, 3)
    assert np.all((W[:, :2] >= 0) & (W[:, :2] <= 1))


def test_indicator_examples():
    pt = Variety.from_point((1, 1))
    assert indicator(pt, [X1], (0,)) == 1
    assert indicator(pt, [X1], (1,)) == 0
    line = Variety.line((0, 0), (1, 0), (-2, 2), samples=5)
    assert indicator(line, [X1 * X1 - 1], (1,)) == 1
    with pytest.raises(ValueError):
        indicator(pt, [X1], (0, 1))


def test_pattern_index_roundtrip():
    for s in range(1, 6):
        for a in range(2 ** s):
            assert pattern_index(pattern_bits(a, s)) == a
    assert pattern_index((1, 0, 0)) == 4


@settings(max_examples=50)
@given(st.integers(0, 2**32 - 1), st.integers(2, 30))
def test_indicator_monotone_in_samples(seed, m):
    rng = np.random.default_rng(seed)
    polys = [random_polynomial(2, 2, rng) for _ in range(2)]
    p0, d = rng.normal(size=2), rng.normal(size=2)
    coarse = Variety.line(p0, d, (-2, 2), samples=m)
    fine = Variety.line(p0, d, (-2, 2), samples=2 * m - 1)  # contains every coarse sample
    assert patterns_met(coarse, polys) <= patterns_met(fine, polys)


@given(st.integers(0, 2**32 - 1))
def test_point_meets_at_most_one_pattern(seed):
    rng = np.random.default_rng(seed)
    polys = [random_polynomial(2, 2, rng) for _ in range(3)]
    x = rng.normal(size=2)
    pt = Variety.from_point(x)
    total = sum(indicator(pt, polys, pattern_bits(a, 3)) for a in range(8))
    on_zero = any(abs(p(x)) <= 1e-9 for p in polys)
    assert total == (0 if on_zero else 1)
    # a point placed exactly on Z(p_1) meets no pattern
    z = Variety.from_point((0.0, 0.3))
    assert sum(indicator(z, [X1, X2], pattern_bits(a, 2)) for a in range(4)) == 0


def test_crossing_examples():
    line = Variety.line((0, 0), (1, 0), (-2, 2))
    c = crossing_count(line, X1 * X1 - 1)
    assert c.count == 3 and not c.degenerate
    np.testing.assert_allclose(sorted(c.roots), [-1, 1], atol=1e-8)
    assert crossing_count(line, X1 * X1 + 1).count == 1
    diag = Variety.line((0, 0), (1, 1), (-2, 2))
    c = crossing_count(diag, X1 - X2)
    assert c.count == 0 and c.degenerate


def test_crossing_refines_roots():
    line = Variety.line((0, 0), (1, 0), (-1, 1))
    P = (X1 - 0.5) * X1 * (X1 + 0.5)
    c = crossing_count(line, P, resolution=100)
    assert c.count == 4
    np.testing.assert_allclose(sorted(c.roots), [-0.5, 0.0, 0.5], atol=1e-9)


def test_crossing_needs_curve():
    with pytest.raises(ValueError):
        crossing_count(Variety.from_point((0, 0)), X1)


def real_roots_in_range(P, p0, d, lo, hi):
    """Roots of the univariate restriction t -> P(p0 + t d), by interpolation and np.roots."""
    deg = max(P.degree, 1)
    ts = np.cos(np.pi * (np.arange(deg + 1) + 0.5) / (deg + 1)) * 3
    vals = [P(p0 + t * d) for t in ts]
    coefs = np.polyfit(ts, vals, deg)
    r = np.roots(coefs)
    r = r[np.abs(r.imag) < 1e-9].real
    return np.sort(r[(r > lo) & (r < hi)])


@pytest.mark.parametrize("seed", range(25))
def test_crossing_bound_and_root_oracle(seed):
    rng = np.random.default_rng(seed)
    polys = [random_polynomial(2, int(rng.integers(1, 4)), rng) for _ in range(2)]
    P = product(polys)
    p0, d = rng.normal(size=2), rng.normal(size=2)
    line = Variety.line(p0, d, (-2, 2))
    c = crossing_count(line, P, resolution=4096)
    assert c.count <= P.degree + 1
    roots = real_roots_in_range(P, p0, d, -2, 2)
    # a sampled run count can only miss roots closer together than the grid
    if len(roots) == 0 or (np.min(np.diff(np.r_[-2, roots, 2])) > 1e-2):
        assert c.count == len(roots) + 1


def test_family_validation():
    with pytest.raises(ValueError):
        Family("empty", [])
    with pytest.raises(ValueError):
        Family("mixed", [Variety.from_point((0, 0)), Variety.line((0, 0), (1, 0))])
    fam = Family.from_points("p", [[0, 1], [2, 3]])
    assert fam.is_points and fam.k == 0 and fam.n == 2 and len(fam) == 2
