"""Acceptance criteria, one test per criterion (numbered as in the project brief)."""

from __future__ import annotations

import time

import numpy as np
import pytest

from conftest import CHECKED_DISTRIBUTIONS, record
from orbitcodes.checks import (
    SWEEP_FAMILIES,
    decomposition_violations,
    evaluate_point,
    isometry_sweep_cases,
    suite_isometry,
    sweep_points,
)
from orbitcodes.constructions import ConstructionSpec
from orbitcodes.formulas import congruence_filter, random_poly_pair, verify_mu_prediction
from orbitcodes.gfext import field_for_q
from orbitcodes.oracles import count_coprime_pairs, naive_weight_distribution
from orbitcodes.orbit import RfwsVerdict, weight_distribution


def _timed_distribution(q, n, spec):
    f = field_for_q(q, n)
    t0 = time.perf_counter()
    wd = weight_distribution(spec.build(f))
    return wd, time.perf_counter() - t0


def _report(num, ok, detail):
    print(f"criterion {num}: {'PASS' if ok else 'FAIL'} {detail}")


def test_criterion_01():
    """MixedQ2 q=2 n=10 l=2 equals (1,2,36,24,576,384); < 1 s"""
    wd, dt = _timed_distribution(2, 10, ConstructionSpec("MixedQ2", 5, l=2))
    _report(1, wd.counts == (1, 2, 36, 24, 576, 384) and dt < 1, f"{wd.counts} {dt:.3f}s")
    assert wd.counts == (1, 2, 36, 24, 576, 384)
    assert dt < 1


def test_criterion_02():
    """MixedQ2 q=3 n=10 l=2 equals (1,3,144,216,11664,17496); < 10 s"""
    wd, dt = _timed_distribution(3, 10, ConstructionSpec("MixedQ2", 5, l=2))
    _report(2, wd.counts == (1, 3, 144, 216, 11664, 17496) and dt < 10, f"{wd.counts} {dt:.3f}s")
    assert wd.counts == (1, 3, 144, 216, 11664, 17496)
    assert dt < 10


def test_criterion_03():
    """MixedQ2 q=5 n=10 l=2 equals (1,5,900,3000,562500,1875000); < 5 min"""
    wd, dt = _timed_distribution(5, 10, ConstructionSpec("MixedQ2", 5, l=2))
    assert wd.orbit_size == 2441406
    _report(3, wd.counts == (1, 5, 900, 3000, 562500, 1875000) and dt < 300, f"{wd.counts} {dt:.3f}s")
    assert wd.counts == (1, 5, 900, 3000, 562500, 1875000)
    assert dt < 300


def test_criterion_04():
    """RfwsMixed q=2 n=10 t=5 l=1 m=2 equals (1,6,24,992) with RFWS(4); < 1 s"""
    wd, dt = _timed_distribution(2, 10, ConstructionSpec("RfwsMixed", 5, l=1, m=2))
    _report(4, wd.counts[:4] == (1, 6, 24, 992) and wd.verdict == RfwsVerdict(4) and dt < 1, f"{dt:.3f}s")
    assert wd.counts == (1, 6, 24, 992, 0, 0, 0, 0)
    assert wd.verdict == RfwsVerdict(4)
    assert dt < 1


def test_criterion_05():
    """RfwsMixed q=2 n=16 t=4 l=3 m=2 equals (1,6,65528) with RFWS(12); < 30 s"""
    wd, dt = _timed_distribution(2, 16, ConstructionSpec("RfwsMixed", 4, l=3, m=2))
    _report(5, wd.counts[:3] == (1, 6, 65528) and wd.verdict == RfwsVerdict(12) and dt < 30, f"{dt:.3f}s")
    assert wd.k == 14 and wd.orbit_size == 65535
    assert wd.counts == (1, 6, 65528) + (0,) * 12
    assert wd.verdict == RfwsVerdict(12)
    assert dt < 30


def test_criterion_06():
    """RfwsMixed q=3 n=9 t=3 l=2 m=2 equals (1,9840) with RFWS(7); < 5 s"""
    wd, dt = _timed_distribution(3, 9, ConstructionSpec("RfwsMixed", 3, l=2, m=2))
    _report(6, wd.counts[:2] == (1, 9840) and wd.verdict == RfwsVerdict(7) and dt < 5, f"{dt:.3f}s")
    assert wd.counts == (1, 9840) + (0,) * 7
    assert wd.verdict == RfwsVerdict(7)
    assert dt < 5


def test_criterion_07():
    """Formula equals brute force on every valid point, q in {2,3}, q^n <= 2^14"""
    mismatches, total = [], 0
    for fam in SWEEP_FAMILIES:
        points = sweep_points(fam, (2, 3), 1 << 14)
        assert points, fam
        for point in points:
            row = evaluate_point(point)
            total += 1
            if row.formula is None or row.formula.counts != row.empirical.counts:
                mismatches.append((fam, point.q, point.n, point.spec.params()))
    _report(7, not mismatches, f"{total} points, {len(mismatches)} mismatches")
    assert not mismatches


def test_criterion_08():
    """Naive oracle equals the fast engine on every sweep subspace with q^n <= 2^12"""
    bad, total = [], 0
    for fam in SWEEP_FAMILIES:
        for point in sweep_points(fam, (2, 3), 1 << 12):
            S = point.spec.build(point.field)
            naive = naive_weight_distribution(S)
            record(point.q, point.n, naive)
            total += 1
            if naive != weight_distribution(S):
                bad.append((fam, point.q, point.n, point.spec.params()))
    _report(8, not bad, f"{total} subspaces, {len(bad)} disagreements")
    assert total > 0
    assert not bad


def test_criterion_09():
    """Congruence k = i (mod d) whenever w[i] > 0, on every distribution computed in the session"""
    assert len(CHECKED_DISTRIBUTIONS) > 100
    bad = [(q, n, wd) for q, n, wd in CHECKED_DISTRIBUTIONS if not congruence_filter(wd, wd.stab_degree)]
    _report(9, not bad, f"{len(CHECKED_DISTRIBUTIONS)} distributions, {len(bad)} violations")
    assert not bad


def test_criterion_10():
    """Sum of w[i] equals (q^n-1)/(q^d-1) on every distribution computed in the session"""
    assert len(CHECKED_DISTRIBUTIONS) > 100
    bad = [(q, n, wd) for q, n, wd in CHECKED_DISTRIBUTIONS
           if sum(wd.counts) != (q**n - 1) // (q**wd.stab_degree - 1) or (q**n - 1) % (q**wd.stab_degree - 1)]
    _report(10, not bad, f"{len(CHECKED_DISTRIBUTIONS)} distributions, {len(bad)} violations")
    assert not bad


def test_criterion_11():
    """Predicted dim(S & mu S) matches on >= 200 random PolyPairs per (q, l)"""
    rng = np.random.default_rng(2024)
    failures = {}
    for q in (2, 3):
        f = field_for_q(q, 10)
        for l in (1, 2):
            spec = ConstructionSpec("MixedQ2", 5, l=l)
            S, lam = spec.build(f), spec.default_lam(f)
            bad = 0
            for _ in range(200):
                pred, got = verify_mu_prediction(S, random_poly_pair(f, l, rng), lam, l)
                bad += pred != got
            failures[(q, l)] = bad
    _report(11, not any(failures.values()), f"mismatches per (q, l): {failures}")
    assert not any(failures.values())


def test_criterion_12():
    """Coprime ratio exactly 1 - 1/q for q in 2..5, degrees 0..3 (not both 0); monic count Q^(2r-1)(Q-1)"""
    ratio_fail, monic_fail = [], []
    for q in (2, 3, 4, 5):
        for da in range(4):
            for db in range(4):
                if da == db == 0:
                    continue
                c, total = count_coprime_pairs(q, da, db)
                if c * q != total * (q - 1):
                    ratio_fail.append((q, da, db, c, total))
        for r in (1, 2):
            c, _ = count_coprime_pairs(q, r, r, True, True)
            if c != q ** (2 * r - 1) * (q - 1):
                monic_fail.append((q, r, c))
    _report(12, not ratio_fail and not monic_fail,
            f"ratio failures {len(ratio_fail)} (cells {[(q, a, b) for q, a, b, *_ in ratio_fail]}), "
            f"monic failures {len(monic_fail)}")
    assert not monic_fail
    assert not ratio_fail


def test_criterion_13():
    """Isometries: orbit image, predicted image and invariant distributions for all i and 20 alphas, q^n <= 2^12"""
    cases = isometry_sweep_cases((2, 3), 1 << 12)
    results = list(suite_isometry(alphas=20, seed=13, cases=cases))
    bad = [r for r in results if not r.passed]
    _report(13, not bad, f"{len(results)} constructions, {sum(r.detail['maps'] for r in results)} maps, "
                         f"{len(bad)} failing")
    assert len(results) == len(cases)
    assert not bad, [r.to_json() for r in bad[:3]]


@pytest.mark.parametrize("params", [(2, 10, 5, 1, 2), (3, 9, 3, 2, 2)])
def test_criterion_14(params):
    """Decomposition identity for all b in F_(q^t)^* and dimension bound for 500 alphas"""
    res = decomposition_violations(*params, samples=500, seed=14)
    ok = res["decomposition_violations"] == 0 and res["bound_violations"] == 0
    _report(14, ok, f"{params} {res}")
    assert res["b_values"] == params[0] ** params[2] - 1
    assert res["decomposition_violations"] == 0
    assert res["bound_violations"] == 0
