from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from orbitcodes.constructions import mixed_q2_code
from orbitcodes.errors import FieldMismatch, NotADivisor, ZeroScalar
from orbitcodes.gfext import build_field, field_for_q
from orbitcodes.subspace import (
    Subspace,
    intersect,
    intersection_dim,
    scalar_mul,
    span_fq,
    span_subfield,
    subspace_distance,
    subspace_sum,
    whole_space,
    zero_subspace,
)

F210 = build_field(2, 1, 10)


def test_span_basics():
    f = F210
    assert span_fq(f, []).k == 0
    S = span_fq(f, [1, f.gamma, f.pow(f.gamma, 2)])
    assert S.k == 3
    assert S.basis[:, :3].tolist() == np.eye(3, dtype=int).tolist()
    F3 = build_field(3, 1, 4)
    x = F3.pow(F3.gamma, 5)
    assert span_fq(F3, [x, F3.mul(2, x)]).k == 1


def test_span_subfield_examples():
    f = F210
    for m in (1, 2, 5, 10):
        assert span_subfield(f, [1], m).k == m
    assert span_subfield(f, [1, f.gamma], 2).k == 4
    xs = [f.gamma, f.pow(f.gamma, 7)]
    assert span_subfield(f, xs, 1) == span_fq(f, xs)
    with pytest.raises(NotADivisor):
        span_subfield(f, [1], 3)


def test_intersection_examples():
    f = F210
    S = mixed_q2_code(f, 5, 2)
    assert intersect(S, S) == S
    assert intersect(S, zero_subspace(f)).k == 0
    lam = f.subfield_generator(10)
    assert intersect(S, scalar_mul(lam, S)).k == 3


def test_scalar_mul_examples():
    f = field_for_q(3, 5)
    S = span_fq(f, [f.gamma, f.pow(f.gamma, 9)])
    assert scalar_mul(1, S) == S
    assert scalar_mul(2, S) == S
    a = f.pow(f.gamma, 31)
    assert scalar_mul(a, scalar_mul(f.inv(a), S)) == S
    with pytest.raises(ZeroScalar):
        scalar_mul(0, S)


def test_distance_examples():
    f = F210
    S = mixed_q2_code(f, 5, 2)
    assert subspace_distance(S, S) == 0
    g2 = f.subfield_generator(2)
    assert subspace_distance(S, scalar_mul(g2, S)) == 2
    assert subspace_distance(S, scalar_mul(f.mul(g2, g2), S)) == 2


def test_sum_examples():
    f = F210
    S = mixed_q2_code(f, 5, 2)
    assert subspace_sum(S, zero_subspace(f)) == (S, True)
    assert subspace_sum(S, S)[0] == S
    sbar = scalar_mul(f.gamma, span_subfield(f, [1], 5))
    Y, direct = subspace_sum(sbar, span_subfield(f, [1], 5))
    assert Y.k == 10 and direct


def test_field_mismatch():
    S = span_fq(F210, [1])
    T = span_fq(build_field(3, 1, 4), [1])
    with pytest.raises(FieldMismatch):
        intersect(S, T)
    with pytest.raises(FieldMismatch):
        subspace_distance(S, T)


def test_json_round_trip_and_hash():
    f = F210
    S = mixed_q2_code(f, 5, 2)
    assert Subspace.from_json(f, S.to_json()) == S
    assert len({S, scalar_mul(1, S), whole_space(f)}) == 2


def test_contains_and_elements():
    f = F210
    S = span_subfield(f, [1], 5)
    g5 = f.subfield_generator(5)
    assert S.contains(g5) and S.contains(0)
    assert not S.contains(f.gamma)
    assert span_fq(f, S.elements()) == S


# -- properties ---------------------------------------------------------------

FIELDS = [(2, 8), (3, 4), (4, 3), (2, 6)]


@st.composite
def subspace_pair(draw):
    q, n = draw(st.sampled_from(FIELDS))
    f = field_for_q(q, n)
    gens = lambda: [draw(st.integers(0, f.size - 1)) for _ in range(draw(st.integers(0, n)))]
    return f, span_fq(f, gens()), span_fq(f, gens())


@given(subspace_pair())
def test_modular_law(sp):
    f, S, T = sp
    total, direct = subspace_sum(S, T)
    meet = intersect(S, T)
    assert S.k + T.k == total.k + meet.k
    assert direct == (meet.k == 0)
    assert subspace_distance(S, T) == subspace_distance(T, S) == S.k + T.k - 2 * meet.k


@given(subspace_pair())
def test_canonical_form_idempotent(sp):
    f, S, _ = sp
    assert Subspace.from_rows(f, S.basis) == S
    assert np.array_equal(Subspace.from_rows(f, S.basis[::-1]).basis, S.basis)


@given(subspace_pair(), st.integers(0, 10**6), st.integers(0, 10**6))
def test_scalar_action(sp, i, j):
    f, S, T = sp
    a, b = f.exp(i), f.exp(j)
    assert scalar_mul(a, scalar_mul(b, S)) == scalar_mul(f.mul(a, b), S)
    assert intersect(scalar_mul(a, S), scalar_mul(a, T)) == scalar_mul(a, intersect(S, T))
    d = subspace_distance(S, scalar_mul(a, S))
    assert d % 2 == 0 and d <= 2 * S.k
    assert intersection_dim(S, scalar_mul(a, S)) == S.k - d // 2


@given(st.sampled_from([(2, 8), (3, 4), (2, 6)]), st.data())
def test_span_subfield_generator_scaling(qn, data):
    q, n = qn
    f = field_for_q(q, n)
    m = data.draw(st.sampled_from([m for m in range(1, n + 1) if n % m == 0]))
    xs = [data.draw(st.integers(1, f.size - 1)) for _ in range(2)]
    c = f.pow(f.subfield_generator(m), data.draw(st.integers(0, 100)))
    S = span_subfield(f, xs, m)
    assert span_subfield(f, [f.mul(c, xs[0]), xs[1]], m) == S
    assert S.k % m == 0
