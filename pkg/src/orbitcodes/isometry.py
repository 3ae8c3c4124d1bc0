"""Frobenius semilinear maps x -> alpha * x^(q^i) acting on subspaces and orbits."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .constructions import ConstructionSpec, mixed_q2_code, polynomial_basis_code
from .errors import DimensionMismatch, FieldMismatch, UnsupportedFamily, ZeroScalar
from .gfext import Field
from .linalg import batch_rref, matmul_mod
from .orbit import compact_key, orbit_bases, orbit_keys
from .subspace import Subspace, scalar_mul, span_fq


@dataclass(frozen=True)
class SemilinearMap:
    """psi(x) = alpha * x^(q^i)."""

    field: Field
    i: int
    alpha: int

    def __post_init__(self):
        if self.alpha == 0:
            raise ZeroScalar("alpha must be nonzero")
        object.__setattr__(self, "i", self.i % self.field.n)

    @classmethod
    def identity(cls, field: Field) -> "SemilinearMap":
        return cls(field, 0, 1)

    def __call__(self, x: int) -> int:
        return self.field.mul(self.alpha, self.field.frobenius(x, self.i))

    def compose(self, other: "SemilinearMap") -> "SemilinearMap":
        """self after other."""
        f = self.field
        return SemilinearMap(f, self.i + other.i, f.mul(self.alpha, f.frobenius(other.alpha, self.i)))

    def inverse(self) -> "SemilinearMap":
        f = self.field
        return SemilinearMap(f, -self.i, f.frobenius(f.inv(self.alpha), -self.i))

    def matrix(self) -> np.ndarray:
        """F_p matrix M with vec(psi(x)) = vec(x) @ M."""
        f = self.field
        return matmul_mod(f.frobenius_matrix(self.i), f.mul_matrix(self.alpha), f.p)

    def to_json(self) -> dict:
        return {"i": self.i, "alpha": self.field.element_to_json(self.alpha)}


def apply_map(psi: SemilinearMap, S: Subspace) -> Subspace:
    if psi.field is not S.field:
        raise FieldMismatch("map and subspace live in different fields")
    return span_fq(S.field, [psi(x) for x in S.elements()])


def apply_map_batch(psi: SemilinearMap, bases: np.ndarray) -> np.ndarray:
    """Canonical bases of psi(V) for a (B, k, n) stack of canonical bases."""
    f = psi.field
    V = matmul_mod(f.vec_from_coords(bases), psi.matrix(), f.p)
    R, _ = batch_rref(f.coords_from_vec(V), f.fq)
    return R


def predicted_image(spec: ConstructionSpec, psi: SemilinearMap) -> Subspace:
    """psi(S) built directly from lam^(q^i) and the composed multiplier alpha * b^(q^i)."""
    f = psi.field
    lam = f.frobenius(spec.default_lam(f), psi.i)
    mult = f.mul(psi.alpha, f.frobenius(spec.b(f), psi.i))
    if spec.family == "PolyBasis":
        return polynomial_basis_code(f, spec.t, spec.k, mult, lam)
    if spec.family == "MixedQ2":
        return scalar_mul(mult, mixed_q2_code(f, spec.t, spec.l, lam))
    raise UnsupportedFamily(f"no closed-form image for {spec.family}")


def _sorted_keys(bases: np.ndarray) -> np.ndarray:
    flat = np.ascontiguousarray(bases.reshape(bases.shape[0], -1), dtype=np.int64)
    return np.sort(flat.view(np.dtype((np.void, flat.shape[1] * 8))).ravel())


class OrbitImageChecker:
    """Repeated psi(Orb(S)) == Orb(psi(S)) tests against one fixed S.

    The orbit of S is enumerated once. Orb(psi(S)) depends only on the
    Frobenius exponent of psi, since psi(S) = alpha * (i, 1)(S), so those
    target sets are cached per exponent.
    """

    def __init__(self, S: Subspace):
        self.S = S
        self.bases = orbit_bases(S)
        self._targets: dict[int, np.ndarray] = {}

    def target(self, i: int) -> np.ndarray:
        i %= self.S.field.n
        if i not in self._targets:
            T = apply_map(SemilinearMap(self.S.field, i, 1), self.S)
            self._targets[i] = _sorted_keys(orbit_bases(T))
        return self._targets[i]

    def check(self, psi: SemilinearMap) -> bool:
        image = _sorted_keys(apply_map_batch(psi, self.bases))
        return len(np.unique(image)) == len(image) and np.array_equal(image, self.target(psi.i))


def orbit_image_check(psi: SemilinearMap, S: Subspace) -> bool:
    """psi(Orb(S)) == Orb(psi(S)) as sets of canonical subspaces."""
    image = _sorted_keys(apply_map_batch(psi, orbit_bases(S)))
    target = _sorted_keys(orbit_bases(apply_map(psi, S)))
    return len(np.unique(image)) == len(image) and np.array_equal(image, target)


def frobenius_equivalent(S1: Subspace, S2: Subspace) -> Optional[SemilinearMap]:
    """A map psi with psi(S1) = S2 if Orb(S1) and Orb(S2) are Frobenius-isometric, else None."""
    f = S1.field
    if S2.field is not f:
        raise FieldMismatch("subspaces live in different fields")
    if S1.k != S2.k:
        raise DimensionMismatch(f"dimensions {S1.k} and {S2.k} differ")
    index = orbit_keys(S2)
    for i in range(f.n):
        T = apply_map(SemilinearMap(f, i, 1), S1)
        j = index.get(compact_key(T.basis, f.q))
        if j is not None:
            # T = gamma^j S2
            return SemilinearMap(f, i, f.exp(-j))
    return None
