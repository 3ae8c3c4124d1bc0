from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from orbitcodes.constructions import mixed_q2_code, polynomial_basis_code
from orbitcodes.errors import InvariantViolation, ZeroDimensional
from orbitcodes.gfext import build_field, divisors, field_for_q
from orbitcodes.orbit import (
    NOT_RFWS,
    RfwsVerdict,
    WeightDistribution,
    check_distribution,
    intersection_histogram,
    orbit_bases,
    orbit_code,
    orbit_enumerate,
    rfws_index,
    split_range,
    stabilizer_degree,
    weight_distribution,
)
from orbitcodes.oracles import naive_weight_distribution
from orbitcodes.subspace import scalar_mul, span_fq, span_subfield, subspace_distance, whole_space, zero_subspace

F210 = build_field(2, 1, 10)


def _wd(counts, d=1):
    return WeightDistribution(len(counts) - 1, tuple(counts), sum(counts), d)


def test_stabilizer_examples():
    f = F210
    assert stabilizer_degree(mixed_q2_code(f, 5, 2)) == 1
    sbar = scalar_mul(f.gamma, span_subfield(f, [1], 5))
    assert stabilizer_degree(sbar) == 5
    assert stabilizer_degree(whole_space(f)) == 10
    with pytest.raises(ZeroDimensional):
        stabilizer_degree(zero_subspace(f))


def test_orbit_sizes():
    f = field_for_q(2, 4)
    S = span_subfield(f, [1], 2)
    assert orbit_code(S).orbit_size == 5
    assert len(orbit_enumerate(S)) == 5
    assert orbit_code(mixed_q2_code(F210, 5, 2)).orbit_size == 1023


def test_worked_example_distributions():
    assert weight_distribution(mixed_q2_code(F210, 5, 2)).counts == (1, 2, 36, 24, 576, 384)
    f = field_for_q(3, 10)
    assert weight_distribution(mixed_q2_code(f, 5, 2)).counts == (1, 3, 144, 216, 11664, 17496)


@pytest.mark.parametrize("q,n", [(2, 4), (2, 6), (3, 4), (4, 3), (2, 12)])
def test_subfield_distribution(q, n):
    f = field_for_q(q, n)
    for m in divisors(n):
        wd = weight_distribution(span_subfield(f, [1], m))
        assert wd.counts == (1,) + (0,) * (m - 1) + (wd.orbit_size - 1,)
        assert wd.stab_degree == m


def test_rfws_index_examples():
    assert rfws_index(_wd((1, 2, 36, 24, 576, 384))) == RfwsVerdict(0)
    assert rfws_index(_wd((1, 6, 24, 0))) == RfwsVerdict(1)
    assert rfws_index(_wd((1, 14, 0, 240))) == NOT_RFWS
    assert str(RfwsVerdict(0)) == "FWS"
    assert str(RfwsVerdict(4)) == "RFWS(4)"
    assert str(NOT_RFWS) == "none"
    assert _wd((1, 6, 24, 0)).to_json()["verdict"] == {"r": 1}


def test_family1_small_cases():
    f = field_for_q(2, 5)
    assert weight_distribution(polynomial_basis_code(f, 5, 3)).counts == (1, 6, 24, 0)
    f = field_for_q(2, 4)
    assert weight_distribution(polynomial_basis_code(f, 4, 2)).counts == (1, 6, 8)
    f = field_for_q(2, 8)
    assert weight_distribution(polynomial_basis_code(f, 4, 3)).counts == (1, 14, 0, 240)


def test_check_distribution_rejects_bad_counts():
    with pytest.raises(InvariantViolation):
        check_distribution(WeightDistribution(2, (1, 1, 1), 4, 1))
    with pytest.raises(InvariantViolation):
        check_distribution(WeightDistribution(2, (0, 2, 1), 3, 1))
    with pytest.raises(InvariantViolation):
        check_distribution(WeightDistribution(2, (1, 1, 3), 5, 2))


def test_workers_and_lanes_do_not_change_result():
    S = mixed_q2_code(F210, 5, 2)
    base = weight_distribution(S)
    assert weight_distribution(S, lanes=7) == base
    assert weight_distribution(S, workers=2, lanes=64) == base


def test_split_range_partitions():
    parts = split_range(0, 1023, 4)
    assert parts[0][0] == 0 and parts[-1][1] == 1023
    assert all(a[1] == b[0] for a, b in zip(parts, parts[1:]))
    S = mixed_q2_code(F210, 5, 2)
    total = sum(intersection_histogram(S, a, b) for a, b in parts)
    assert tuple(int(c) for c in total) == (1, 2, 36, 24, 576, 384)


def test_orbit_bases_match_scalar_mul():
    f = field_for_q(3, 4)
    S = span_fq(f, [1, f.pow(f.gamma, 5)])
    bases = orbit_bases(S)
    for j in (0, 1, 17, len(bases) - 1):
        assert np.array_equal(bases[j], scalar_mul(f.exp(j), S).basis)


@given(st.sampled_from([(2, 6), (3, 4), (2, 8), (4, 3), (5, 3)]), st.data())
def test_random_subspaces_agree_with_oracle(qn, data):
    q, n = qn
    f = field_for_q(q, n)
    k = data.draw(st.integers(1, n))
    S = span_fq(f, [data.draw(st.integers(1, f.size - 1)) for _ in range(k)])
    wd = weight_distribution(S)
    assert wd == naive_weight_distribution(S)
    assert wd.counts[0] == 1
    assert sum(wd.counts) == (q**n - 1) // (q**wd.stab_degree - 1)
    assert all((wd.k - i) % wd.stab_degree == 0 for i, c in enumerate(wd.counts) if i and c)


@given(st.sampled_from([(2, 6), (3, 4), (2, 8)]), st.data())
def test_distance_histogram_matches_direct(qn, data):
    q, n = qn
    f = field_for_q(q, n)
    S = span_fq(f, [data.draw(st.integers(1, f.size - 1)) for _ in range(data.draw(st.integers(1, n)))])
    wd = weight_distribution(S)
    direct = [0] * (S.k + 1)
    for V in orbit_enumerate(S):
        direct[subspace_distance(S, V) // 2] += 1
    assert tuple(direct) == wd.counts
