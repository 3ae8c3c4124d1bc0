"""One-orbit cyclic codes Orb(S) = {alpha S : alpha in F_{q^n}^*}.

The orbit is walked through the coset representatives gamma^j,
0 <= j < (q^n - 1)/(q^d - 1), where F_{q^d} is the stabilizer of S.
Intersection dimensions are computed in bulk over the prime field: each
gamma^j S is given by F_p vectors, reduced modulo S by a fixed projection,
and the rank of the remainder is the codimension of S ∩ gamma^j S.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import gcd
from typing import Iterator

import numpy as np

from .errors import InvariantViolation, SizeCapExceeded, ZeroDimensional
from .gfext import Field, build_field, divisors
from .linalg import batch_rank, batch_rref, matmul_mod, matpow_mod_p, rref
from .subspace import Subspace, scalar_mul

DEFAULT_LANES = 4096


@dataclass(frozen=True)
class RfwsVerdict:
    """r-FWS status: ``r`` is None when the distribution has an interior zero."""

    r: int | None

    @property
    def is_rfws(self) -> bool:
        return self.r is not None

    @property
    def is_fws(self) -> bool:
        return self.r == 0

    def __str__(self) -> str:
        if self.r is None:
            return "none"
        return "FWS" if self.r == 0 else f"RFWS({self.r})"

    def to_json(self):
        if self.r is None:
            return "none"
        return "FWS" if self.r == 0 else {"r": self.r}


NOT_RFWS = RfwsVerdict(None)


@dataclass(frozen=True)
class WeightDistribution:
    """counts[i] = number of orbit elements at subspace distance 2i from S."""

    k: int
    counts: tuple[int, ...]
    orbit_size: int
    stab_degree: int = 1

    def __post_init__(self):
        if len(self.counts) != self.k + 1:
            raise ValueError("counts must have k + 1 entries")

    @property
    def verdict(self) -> RfwsVerdict:
        return rfws_index(self)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "counts": list(self.counts),
            "orbit_size": self.orbit_size,
            "stab_degree": self.stab_degree,
            "verdict": self.verdict.to_json(),
        }


@dataclass(frozen=True)
class OrbitCode:
    rep: Subspace
    stab_degree: int
    orbit_size: int


def rfws_index(wd: WeightDistribution) -> RfwsVerdict:
    w = wd.counts[1:]
    r = 0
    while r < len(w) and w[len(w) - 1 - r] == 0:
        r += 1
    if all(c > 0 for c in w[: len(w) - r]):
        return RfwsVerdict(r)
    return NOT_RFWS


def stabilizer_degree(S: Subspace) -> int:
    """d with H(S) = F_{q^d}."""
    if S.k == 0:
        raise ZeroDimensional("stabilizer of the zero subspace is the whole field")
    field = S.field
    for d in sorted(divisors(gcd(field.n, S.k)), reverse=True):
        if d == 1 or scalar_mul(field.subfield_generator(d), S) == S:
            return d
    raise AssertionError("unreachable")


def orbit_size_for(field: Field, d: int) -> int:
    return field.order // (field.q**d - 1)


def orbit_code(S: Subspace) -> OrbitCode:
    d = stabilizer_degree(S)
    return OrbitCode(S, d, orbit_size_for(S.field, d))


def scaled_lanes(
    field: Field, rows: np.ndarray, j0: int, j1: int, lanes: int = DEFAULT_LANES
) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Yield ``(js, V)`` with ``V[c] = vec(gamma^js[c] * row)`` for every F_p row.

    Covers every j in [j0, j1) exactly once. Lanes start at evenly spaced
    exponents and advance together by one multiplication by gamma per step.
    """
    count = j1 - j0
    if count <= 0:
        return
    p = field.p
    M = field.gamma_matrix
    C = min(lanes, count)
    L = -(-count // C)
    first = matmul_mod(np.asarray(rows, dtype=np.int64), matpow_mod_p(M, j0, p), p)
    starts = first[None]
    step = matpow_mod_p(M, L, p)
    while starts.shape[0] < C:
        starts = np.concatenate([starts, matmul_mod(starts, step, p)])
        step = matmul_mod(step, step, p)
    cur = starts[:C]
    base = j0 + np.arange(C, dtype=np.int64) * L
    for s in range(L):
        js = base + s
        valid = js < j1
        if valid.all():
            yield js, cur
        else:
            yield js[valid], cur[valid]
        cur = matmul_mod(cur, M, p)


def _fp_expansion(S: Subspace) -> tuple[np.ndarray, np.ndarray]:
    """F_p-RREF of S (as an F_p-space) and the projection killing it."""
    field = S.field
    g = field.fq_generator
    gpows = [1]
    for _ in range(1, field.e):
        gpows.append(field.mul(gpows[-1], g))
    elems = [field.mul(a, s) for s in S.elements() for a in gpows]
    R, piv = rref(field.vec_array(np.array(elems, dtype=np.int64)), field.fp)
    nonpiv = [c for c in range(field.deg) if c not in piv]
    P = np.zeros((field.deg, len(nonpiv)), dtype=np.int64)
    for j, c in enumerate(nonpiv):
        P[c, j] = 1
        for r, pc in enumerate(piv):
            P[pc, j] = (-R[r, c]) % field.p
    return R, P


def _histogram(params: tuple[int, int, int], R: np.ndarray, P: np.ndarray, k: int,
               j0: int, j1: int, lanes: int = DEFAULT_LANES) -> np.ndarray:
    field = build_field(*params)
    p, e = field.p, field.e
    ek = R.shape[0]
    hist = np.zeros(k + 1, dtype=np.int64)
    for _, V in scaled_lanes(field, R, j0, j1, lanes):
        W = matmul_mod(V, P, p)
        dims = ek - batch_rank(W, field.fp)
        if e > 1 and (dims % e).any():
            raise InvariantViolation("F_p intersection dimension not a multiple of e")
        hist += np.bincount(k - dims // e, minlength=k + 1)
    return hist


def _histogram_task(args):
    return _histogram(*args)


def split_range(j0: int, j1: int, parts: int) -> list[tuple[int, int]]:
    size = -(-(j1 - j0) // parts)
    return [(a, min(a + size, j1)) for a in range(j0, j1, size)]


def intersection_histogram(S: Subspace, j0: int, j1: int, lanes: int = DEFAULT_LANES) -> np.ndarray:
    """Counts of distance indices k - dim(S ∩ gamma^j S) for j in [j0, j1)."""
    R, P = _fp_expansion(S)
    return _histogram(S.field.params, R, P, S.k, j0, j1, lanes)


def weight_distribution(S: Subspace, workers: int = 1, lanes: int = DEFAULT_LANES) -> WeightDistribution:
    """Exhaustive weight distribution of Orb(S)."""
    field = S.field
    d = stabilizer_degree(S)
    N = orbit_size_for(field, d)
    R, P = _fp_expansion(S)
    if workers > 1 and N > lanes:
        tasks = [(field.params, R, P, S.k, a, b, lanes) for a, b in split_range(0, N, workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            hist = sum(pool.map(_histogram_task, tasks))
    else:
        hist = _histogram(field.params, R, P, S.k, 0, N, lanes)
    wd = WeightDistribution(S.k, tuple(int(c) for c in hist), N, d)
    check_distribution(wd)
    return wd


def check_distribution(wd: WeightDistribution) -> None:
    """Sum identity and the stabilizer congruence; raises InvariantViolation."""
    if sum(wd.counts) != wd.orbit_size:
        raise InvariantViolation(f"counts sum to {sum(wd.counts)}, orbit size is {wd.orbit_size}")
    if wd.counts[0] != 1:
        raise InvariantViolation("exactly one coset must fix S")
    d = wd.stab_degree
    for i, c in enumerate(wd.counts[1:], start=1):
        if c > 0 and (wd.k - i) % d:
            raise InvariantViolation(f"w[{i}] > 0 but k={wd.k} is not congruent to {i} mod {d}")


ORBIT_ENUM_CAP = 1 << 20


def compact_key(basis: np.ndarray, q: int) -> bytes:
    """Short byte key of a canonical basis."""
    dtype = np.uint16 if q <= 1 << 16 else np.uint32
    return np.ascontiguousarray(basis, dtype=dtype).tobytes()


def orbit_chunks(S: Subspace, lanes: int = DEFAULT_LANES):
    field = S.field
    N = orbit_size_for(field, stabilizer_degree(S))
    if N > ORBIT_ENUM_CAP:
        raise SizeCapExceeded(f"orbit of size {N} exceeds enumeration cap {ORBIT_ENUM_CAP}")
    rows = field.vec_array(np.array(S.elements(), dtype=np.int64))
    for js, V in scaled_lanes(field, rows, 0, N, lanes):
        R, _ = batch_rref(field.coords_from_vec(V), field.fq)
        yield js, R


def orbit_bases(S: Subspace, lanes: int = DEFAULT_LANES) -> np.ndarray:
    """Canonical bases of gamma^j S for j = 0..orbit_size-1, shape (N, k, n)."""
    field = S.field
    N = orbit_size_for(field, stabilizer_degree(S))
    out = np.empty((N, S.k, field.n), dtype=np.int64)
    for js, R in orbit_chunks(S, lanes):
        out[js] = R
    return out


def orbit_keys(S: Subspace, lanes: int = DEFAULT_LANES) -> dict[bytes, int]:
    """Map compact_key(gamma^j S) -> j over the whole orbit."""
    out: dict[bytes, int] = {}
    for js, R in orbit_chunks(S, lanes):
        for j, b in zip(js.tolist(), R):
            out[compact_key(b, S.field.q)] = j
    return out


def orbit_enumerate(S: Subspace) -> set[Subspace]:
    field = S.field
    return {Subspace(field, b) for b in orbit_bases(S)}
