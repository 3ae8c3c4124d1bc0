"""Brute-force baselines.

These deliberately avoid the coset quotienting, F_p projections and RREF
machinery used elsewhere: subspaces are handled as explicit element sets and
polynomials as plain tuples.
"""

from __future__ import annotations

import itertools
from math import log

import numpy as np

from .errors import BadParams, SizeCapExceeded, TooLarge
from .orbit import WeightDistribution
from .subspace import Subspace

NAIVE_CAP = 1 << 14
PAIR_CAP = 1 << 32


def _element_set(S: Subspace) -> np.ndarray:
    """All elements of S, built by additive closure over F_q-multiples of the basis."""
    f = S.field
    scalars = f.fq_elements()
    elems = {0}
    for x in S.elements():
        line = {f.mul(c, x) for c in scalars}
        elems = {f.add(a, b) for a in elems for b in line}
    return np.array(sorted(elems), dtype=np.int64)


def naive_weight_distribution(S: Subspace) -> WeightDistribution:
    """Histogram of d(S, alpha S) over all alpha != 0, deduplicated by element sets."""
    f = S.field
    if f.size > NAIVE_CAP:
        raise SizeCapExceeded(f"naive enumeration needs q^n <= {NAIVE_CAP}")
    elems = _element_set(S)
    k = round(log(len(elems), f.q))
    nonzero_logs = f.log_array(elems[1:])
    seen: dict[bytes, int] = {}
    for j in range(f.order):
        moved = np.sort(np.concatenate([[0], f.exp_array((nonzero_logs + j) % f.order)]))
        key = moved.tobytes()
        if key in seen:
            continue
        common = len(np.intersect1d(elems, moved, assume_unique=True))
        seen[key] = k - round(log(common, f.q))
    counts = [0] * (k + 1)
    for i in seen.values():
        counts[i] += 1
    N = len(seen)
    d = round(log(f.order // N + 1, f.q))
    return WeightDistribution(k, tuple(counts), N, d)


# -- coprime polynomial counting -------------------------------------------


def _small_field(q: int):
    """(add, mul) tables for F_q, q a prime power, from a brute-force irreducible."""
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e = 0
    r = q
    while r > 1:
        if r % p:
            raise BadParams(f"q={q} is not a prime power")
        r //= p
        e += 1
    if e == 1:
        a = np.arange(q)
        return (a[:, None] + a[None, :]) % q, (a[:, None] * a[None, :]) % q

    def digits(x):
        return [(x // p**i) % p for i in range(e)]

    def polymul_mod(x, y, mod):
        prod = [0] * (2 * e - 1)
        for i, u in enumerate(digits(x)):
            for j, v in enumerate(digits(y)):
                prod[i + j] = (prod[i + j] + u * v) % p
        for deg in range(2 * e - 2, e - 1, -1):
            c = prod[deg]
            if c:
                for i in range(e + 1):
                    prod[deg - e + i] = (prod[deg - e + i] - c * mod[i]) % p
        return sum(c * p**i for i, c in enumerate(prod[:e]))

    # monic degree-e polynomial with no roots and no smaller factors: test by zero divisors
    for tail in itertools.product(range(p), repeat=e):
        mod = list(tail) + [1]
        table = [[polymul_mod(x, y, mod) for y in range(q)] for x in range(q)]
        if all(table[x][y] for x in range(1, q) for y in range(1, q)):
            break
    add = [[sum(((u + v) % p) * p**i for i, (u, v) in enumerate(zip(digits(x), digits(y)))) for y in range(q)]
           for x in range(q)]
    return np.array(add), np.array(table)


def _gcd_is_one(a: list[int], b: list[int], add, mul, neg, inv) -> bool:
    while b:
        lead_inv = inv[b[-1]]
        while len(a) >= len(b):
            f = mul[a[-1]][lead_inv]
            shift = len(a) - len(b)
            for j, c in enumerate(b):
                a[shift + j] = add[a[shift + j]][neg[mul[f][c]]]
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    return len(a) == 1


def _polys(q: int, deg: int, monic: bool):
    leads = [1] if monic else range(1, q)
    for lead in leads:
        for tail in itertools.product(range(q), repeat=deg):
            yield list(tail) + [lead]


def count_coprime_pairs(q: int, deg_a: int, deg_b: int, monic_a: bool = False,
                        monic_b: bool = False) -> tuple[int, int]:
    """(coprime, total) over pairs of polynomials of exact degrees deg_a, deg_b."""
    if q < 2 or q > 16:
        raise BadParams("q must be a prime power at most 16")
    if deg_a < 0 or deg_b < 0 or deg_a == deg_b == 0:
        raise BadParams("degrees must be nonnegative and not both zero")
    n_a = (1 if monic_a else q - 1) * q**deg_a
    n_b = (1 if monic_b else q - 1) * q**deg_b
    total = n_a * n_b
    if total > PAIR_CAP:
        raise TooLarge(f"{total} pairs exceed {PAIR_CAP}")
    add, mul = _small_field(q)
    add, mul = add.tolist(), mul.tolist()
    neg = [row.index(0) for row in add]
    inv = [0] + [mul[x].index(1) for x in range(1, q)]
    bs = list(_polys(q, deg_b, monic_b))
    coprime = 0
    for a in _polys(q, deg_a, monic_a):
        for b in bs:
            if _gcd_is_one(list(a), list(b), add, mul, neg, inv):
                coprime += 1
    return coprime, total
