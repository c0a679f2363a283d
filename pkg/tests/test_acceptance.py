"""Acceptance suite: one test (or group of tests) per criterion, with its tolerance."""

import json
import math
import time

import numpy as np
import pytest

from polypart import cli
from polypart.f2dickson import (dickson_product, dickson_symmetric, F2Poly, index_ideal, obstruction_check,
                                reduce_mod_ideal)
from polypart.hamsandwich import Hyperplane, bisect_exact, bisect_search, certify
from polypart.io import dumps_report
from polypart.partition import partition_points, verify_bounds
from polypart.phimap import TupleY, act, act_codomain, in_generic_position, phi
from polypart.schedule import (PartitionParams, cell_bound_constant, cell_bound_holds, compute_delta,
                               compute_schedule)
from polypart.varieties import Family, Variety, crossing_count

DATA_SEED = 20240601


def uniform_families(sizes, seed=DATA_SEED):
    rng = np.random.default_rng(seed)
    return [Family.from_points(f"family{i}", rng.uniform(0, 1, size=(m, 2))) for i, m in enumerate(sizes)]


@pytest.fixture(scope="module")
def two_family_partition():
    fams = uniform_families([64, 64])
    params = PartitionParams(2, 2, 12)
    started = time.perf_counter()
    result = partition_points(fams, params, seed=0)
    return result, params, time.perf_counter() - started


@pytest.mark.criterion(1, "degree schedule inequalities, runtime < 1 s")
def test_schedule_suite():
    started = time.perf_counter()
    for n in range(1, 5):
        for j in range(1, 5):
            for ell in range(1, 13):
                d = compute_delta(ell, j, n)
                low = math.factorial(n) * j * 2 ** (ell - 1)
                assert low <= d ** n < low * 2 ** n
                assert d == 1 or (d - 1) ** n < low
    for n in range(1, 4):
        cn = cell_bound_constant(n)
        for j in range(1, 4):
            for D in range(1, 201):
                sched = compute_schedule(PartitionParams(n, j, D))
                s = sched.s
                nxt = compute_delta(s + 1, j, n)
                assert sum(sched.deltas) <= D < sum(sched.deltas) + nxt
                assert cell_bound_holds(D, n, j, s, cn)
    assert time.perf_counter() - started < 1.0


@pytest.mark.criterion(2, "Dickson obstruction survives reduction, runtime < 10 s")
def test_dickson_obstruction():
    started = time.perf_counter()
    for s in range(1, 6):
        assert dickson_product(s) == dickson_symmetric(s)
    for s in range(1, 5):
        for j in range(1, 4):
            res = obstruction_check(s, j)
            assert res.nonzero and res.witness_present
    # hand expansion: (u1 + u2) u1 u2 = u1^2 u2 + u1 u2^2, reduced mod <u1^2, u2^3>
    q = F2Poly(2, [(2, 1), (1, 2)])
    assert dickson_product(2) == q
    assert reduce_mod_ideal(q, index_ideal(2, 1)) == F2Poly(2, [(1, 2)])
    assert time.perf_counter() - started < 10.0


@pytest.mark.criterion(3, "colored point partitions meet the per-cell bounds, runtime < 2 min")
def test_two_families_of_64(two_family_partition):
    result, params, seconds = two_family_partition
    assert list(result.schedule.deltas) == [2, 3, 4]
    assert result.schedule.s == 3
    assert result.cell_table.counts.shape == (2, 8)
    assert result.cell_table.counts.max() <= 64 // 8
    assert verify_bounds(result, params)["passed"]
    assert seconds < 120


@pytest.mark.criterion(3, "colored point partitions meet the per-cell bounds, runtime < 2 min")
def test_one_family_of_128():
    fams = uniform_families([128], seed=DATA_SEED + 1)
    params = PartitionParams(2, 1, 9)
    started = time.perf_counter()
    result = partition_points(fams, params, seed=0)
    assert result.schedule.s == 3
    assert result.cell_table.counts.max() <= 128 // 8
    assert verify_bounds(result, params)["passed"]
    assert time.perf_counter() - started < 120


def oracle_instances(count=100):
    rng = np.random.default_rng(7)
    for _ in range(count):
        t = int(rng.integers(1, 4))
        k = int(rng.integers(1, t + 1))
        sizes = rng.multinomial(int(rng.integers(k, 33)), [1 / k] * k)
        yield t, [rng.normal(size=(int(m), t)) for m in sizes]


@pytest.mark.criterion(4, "search and exact oracle certificates agree on 100 instances")
def test_oracle_equivalence():
    for idx, (t, sets) in enumerate(oracle_instances()):
        assert sum(len(S) for S in sets) <= 32
        h_exact, c_exact = bisect_exact(sets, t=t)
        h_search, c_search = bisect_search(sets, seed=idx, t=t)
        # the same validator has to accept both answers
        assert certify(h_exact, sets).valid
        assert certify(h_search, sets).valid
        assert c_exact.valid and c_search.valid


@pytest.mark.criterion(4, "search and exact oracle certificates agree on 100 instances")
def test_one_dimensional_cut_is_a_median_cut():
    rng = np.random.default_rng(8)
    for idx in range(50):
        X = rng.normal(size=(int(rng.integers(1, 33)), 1))
        h, cert = bisect_search([X], seed=idx)
        median = certify(Hyperplane([1.0], -float(np.median(X))), [X]).counts[0]
        got = cert.counts[0]
        assert got[2] == median[2]
        assert sorted(got[:2]) == sorted(median[:2])


@pytest.mark.criterion(5, "phi is equivariant on 200 generic instances, exact equality")
def test_equivariance():
    rng = np.random.default_rng(11)
    done = 0
    while done < 200:
        n = int(rng.integers(1, 4))
        params = PartitionParams(n, 1, int(rng.integers(2, 10)))
        sched = compute_schedule(params)
        if sched.s == 0:
            continue
        y = TupleY.random(sched, rng)
        fam = Family.from_points("p", rng.normal(size=(int(rng.integers(1, 40)), n)))
        if not in_generic_position(y, [fam]):
            continue
        beta = tuple(int(b) for b in rng.integers(0, 2, size=sched.s))
        lhs = phi(act(y, beta), [fam])
        rhs = act_codomain(phi(y, [fam]), beta)
        assert np.array_equal(lhs.counts, rhs.counts)
        done += 1


@pytest.mark.criterion(6, "100 random lines cross the product polynomial at most degree + 1 times")
def test_crossing_bound(two_family_partition):
    result, _, _ = two_family_partition
    P = result.product()
    assert P.degree <= 9
    rng = np.random.default_rng(12)
    for _ in range(100):
        line = Variety.line(rng.uniform(0, 1, 2), rng.normal(size=2), (-1.0, 1.0))
        assert crossing_count(line, P).count <= P.degree + 1


@pytest.mark.criterion(7, "identical seeds give byte-identical reports")
def test_determinism(tmp_path):
    fams = uniform_families([64, 64])
    params = PartitionParams(2, 2, 12)
    texts = []
    for _ in range(2):
        res = partition_points(fams, params, seed=0)
        texts.append(dumps_report({"partition": res.to_record(), "bounds": verify_bounds(res, params)}))
    assert texts[0] == texts[1]


@pytest.mark.criterion(7, "identical seeds give byte-identical reports")
def test_cli_determinism(tmp_path):
    rng = np.random.default_rng(DATA_SEED)
    doc = {"n": 2, "families": [{"name": f"family{i}", "kind": "points",
                                 "points": rng.uniform(0, 1, (64, 2)).tolist()} for i in range(2)]}
    src = tmp_path / "in.json"
    src.write_text(json.dumps(doc))
    outs = [tmp_path / "a.json", tmp_path / "b.json"]
    for out in outs:
        assert cli.run(["partition", "--input", str(src), "-D", "12", "--seed", "0", "--out", str(out)]) == 0
    assert outs[0].read_bytes() == outs[1].read_bytes()
