"""F_q-linear subspaces of F_{q^n} in canonical reduced row-echelon form."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import FieldMismatch, ZeroScalar
from .gfext import Field
from .linalg import batch_rref, rref


class Subspace:
    """An F_q-subspace of F_{q^n}.

    ``basis`` is the unique RREF of the coordinate matrix (rows are F_q
    coordinates of basis elements), so equality of subspaces is equality of
    bases.
    """

    __slots__ = ("field", "basis", "_key")

    def __init__(self, field: Field, basis: np.ndarray):
        basis = np.asarray(basis, dtype=np.int64).reshape(-1, field.n)
        basis.setflags(write=False)
        self.field = field
        self.basis = basis
        self._key = basis.tobytes()

    @classmethod
    def from_rows(cls, field: Field, rows: np.ndarray) -> "Subspace":
        R, _ = rref(np.asarray(rows, dtype=np.int64).reshape(-1, field.n), field.fq)
        return cls(field, R)

    @property
    def k(self) -> int:
        return self.basis.shape[0]

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(int(np.flatnonzero(row)[0]) for row in self.basis)

    def key(self) -> bytes:
        return self._key

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.field is other.field and self._key == other._key

    def __hash__(self) -> int:
        return hash((self.field.params, self._key))

    def __repr__(self) -> str:
        return f"Subspace(k={self.k}, field={self.field!r}, basis={self.basis.tolist()})"

    def elements(self) -> list[int]:
        """The basis rows as field elements."""
        if self.k == 0:
            return []
        return [int(x) for x in self.field.from_coords_array(self.basis)]

    def contains(self, x: int) -> bool:
        c = np.array(self.field.coords(x), dtype=np.int64)
        return _rank_rows(self.field, np.vstack([self.basis, c[None]])) == self.k

    def to_json(self) -> dict:
        return {"k": self.k, "basis": self.basis.tolist()}

    @classmethod
    def from_json(cls, field: Field, obj: dict) -> "Subspace":
        S = cls.from_rows(field, np.array(obj["basis"], dtype=np.int64).reshape(-1, field.n))
        if S.k != obj["k"]:
            raise ValueError("basis rank does not match k")
        return S


def _rank_rows(field: Field, rows: np.ndarray) -> int:
    R, _ = rref(rows, field.fq)
    return R.shape[0]


def _same_field(S: Subspace, T: Subspace) -> Field:
    if S.field is not T.field:
        raise FieldMismatch(f"{S.field!r} vs {T.field!r}")
    return S.field


def zero_subspace(field: Field) -> Subspace:
    return Subspace(field, np.zeros((0, field.n), dtype=np.int64))


def whole_space(field: Field) -> Subspace:
    return Subspace(field, np.eye(field.n, dtype=np.int64))


def span_fq(field: Field, elements: Iterable[int]) -> Subspace:
    xs = [int(x) for x in elements]
    if not xs:
        return zero_subspace(field)
    return Subspace.from_rows(field, field.coords_array(np.array(xs, dtype=np.int64)))


def span_subfield(field: Field, elements: Iterable[int], m: int) -> Subspace:
    """F_{q^m}-span of the elements, as an F_q-subspace."""
    basis = field.subfield_basis(m)
    return span_fq(field, [field.mul(b, x) for x in elements for b in basis])


def intersect(S: Subspace, T: Subspace) -> Subspace:
    """S ∩ T via the Zassenhaus block matrix [[S, S], [T, 0]]."""
    field = _same_field(S, T)
    n = field.n
    if S.k == 0 or T.k == 0:
        return zero_subspace(field)
    top = np.hstack([S.basis, S.basis])
    bottom = np.hstack([T.basis, np.zeros_like(T.basis)])
    R, _ = rref(np.vstack([top, bottom]), field.fq)
    left_zero = ~R[:, :n].any(axis=1)
    return Subspace(field, R[left_zero, n:])


def subspace_sum(S: Subspace, T: Subspace) -> tuple[Subspace, bool]:
    """S + T together with a flag telling whether the sum is direct."""
    field = _same_field(S, T)
    total = Subspace.from_rows(field, np.vstack([S.basis, T.basis]))
    return total, total.k == S.k + T.k


def scalar_mul(alpha: int, S: Subspace) -> Subspace:
    """alpha * S for nonzero alpha."""
    if alpha == 0:
        raise ZeroScalar("scalar must be nonzero")
    field = S.field
    return span_fq(field, [field.mul(alpha, x) for x in S.elements()])


def subspace_distance(U: Subspace, V: Subspace) -> int:
    return U.k + V.k - 2 * intersect(U, V).k


def intersection_dim(S: Subspace, T: Subspace) -> int:
    field = _same_field(S, T)
    return S.k + T.k - _rank_rows(field, np.vstack([S.basis, T.basis]))


def canonical_batch(field: Field, coords: np.ndarray) -> np.ndarray:
    """Canonical bases for a stack (B, k, n) of full-rank coordinate matrices."""
    R, _ = batch_rref(coords, field.fq)
    return R


def subspaces_from_batch(field: Field, bases: Sequence[np.ndarray]) -> list[Subspace]:
    return [Subspace(field, b) for b in bases]
