"""Exact linear algebra over small finite fields, vectorised over batches.

Matrices are integer numpy arrays whose entries encode elements of F_q as
0..q-1. For prime q the encoding is the residue itself; for q = p^e the
entry is the base-p digit string of the coordinates in a fixed F_p-basis of
F_q, so addition is digit-wise and multiplication goes through a table.
"""

from __future__ import annotations

import numpy as np

from .errors import SizeCapExceeded

_INV_TABLE_LIMIT = 1 << 16
_COMPOSITE_Q_LIMIT = 1024


class GFq:
    """Vectorised arithmetic in F_q on integer arrays."""

    def __init__(self, p: int, e: int = 1, mul_table: np.ndarray | None = None):
        self.p = p
        self.e = e
        self.q = p**e
        self.prime = e == 1
        if self.prime:
            if p <= _INV_TABLE_LIMIT:
                inv = np.zeros(p, dtype=np.int64)
                for a in range(1, p):
                    inv[a] = pow(a, p - 2, p)
                self._inv = inv
            else:
                self._inv = None
            return
        if self.q > _COMPOSITE_Q_LIMIT:
            raise SizeCapExceeded(f"composite q={self.q} exceeds table limit {_COMPOSITE_Q_LIMIT}")
        if mul_table is None:
            raise ValueError("composite q needs a multiplication table")
        q = self.q
        vals = np.arange(q)
        digits = (vals[:, None] // p ** np.arange(e)) % p
        weights = p ** np.arange(e)
        self._add = (((digits[:, None, :] + digits[None, :, :]) % p) @ weights).astype(np.int64)
        self._neg = (((-digits) % p) @ weights).astype(np.int64)
        self._mul = np.asarray(mul_table, dtype=np.int64)
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.nonzero(self._mul[a] == 1)[0][0])
        self._inv = inv

    def __repr__(self) -> str:
        return f"GFq({self.q})"

    def add(self, a, b):
        if self.prime:
            return (a + b) % self.p
        return self._add[a, b]

    def neg(self, a):
        if self.prime:
            return (-a) % self.p
        return self._neg[a]

    def sub(self, a, b):
        if self.prime:
            return (a - b) % self.p
        return self._add[a, self._neg[b]]

    def mul(self, a, b):
        if self.prime:
            return (a * b) % self.p
        return self._mul[a, b]

    def inv(self, a):
        """Elementwise inverse; 0 maps to 0."""
        if self._inv is not None:
            return self._inv[a]
        # large prime: a^(p-2) by square-and-multiply, products stay below 2^48
        a = np.asarray(a, dtype=np.int64) % self.p
        result = np.ones_like(a)
        base = a.copy()
        k = self.p - 2
        while k:
            if k & 1:
                result = result * base % self.p
            base = base * base % self.p
            k >>= 1
        return result

    def axpy_rows(self, m: np.ndarray, f: np.ndarray, top: np.ndarray) -> np.ndarray:
        """m[b, i] - f[b, i] * top[b] for a (B, r, c) stack, in place when possible."""
        if self.p == 2 and self.prime:
            m ^= f[:, :, None] & top[:, None, :]
            return m
        if self.prime:
            m -= f[:, :, None] * top[:, None, :]
            m %= self.p
            return m
        return self._add[m, self._neg[self._mul[f[:, :, None], top[:, None, :]]]]

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.prime:
            return (a.astype(np.int64) @ b.astype(np.int64)) % self.p
        out = np.zeros(a.shape[:-1] + b.shape[-1:], dtype=np.int64)
        for j in range(a.shape[-1]):
            out = self._add[out, self._mul[a[..., j, None], b[..., j, :]]]
        return out


def batch_rref(m: np.ndarray, F: GFq) -> tuple[np.ndarray, np.ndarray]:
    """Reduced row-echelon form of every matrix in a (B, r, c) stack.

    Returns ``(R, rank)``. Nonzero rows come first with strictly increasing
    pivot columns and every pivot equal to 1, so two matrices have the same
    row space iff their outputs are identical.
    """
    m = np.array(m, dtype=np.int64, copy=True)
    if m.ndim != 3:
        raise ValueError("expected a (B, r, c) array")
    B, r, c = m.shape
    row = np.zeros(B, dtype=np.int64)
    if r == 0:
        return m, row
    ridx = np.arange(r)
    ar = np.arange(B)
    for col in range(c):
        cand = (m[:, :, col] != 0) & (ridx[None, :] >= row[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        # batches without a pivot in this column swap a row with itself and eliminate nothing
        rb = np.minimum(row, r - 1)
        piv = np.where(has, cand.argmax(axis=1), rb)
        top = m[ar, piv]
        m[ar, piv] = m[ar, rb]
        if not (F.prime and F.p == 2):
            top = np.where(has[:, None], F.mul(top, F.inv(top[:, col])[:, None]), top)
        m[ar, rb] = top
        f = np.where(has[:, None], m[:, :, col], 0)
        f[ar, rb] = 0
        m = F.axpy_rows(m, f, top)
        row += has
    return m, row


def batch_rank(m: np.ndarray, F: GFq) -> np.ndarray:
    """Rank of every matrix in a (B, r, c) stack (fraction-free elimination)."""
    m = np.array(m, dtype=np.int64, copy=True)
    B, r, c = m.shape
    rank = np.zeros(B, dtype=np.int64)
    ar = np.arange(B)
    for col in range(c):
        nz = m[:, :, col] != 0
        has = nz.any(axis=1)
        if not has.any():
            continue
        piv = nz.argmax(axis=1)
        prow = m[ar, piv]
        pv = np.where(has, prow[:, col], 1)
        f = np.where(has[:, None], m[:, :, col], 0)
        # row_i <- pv*row_i - f_i*pivot_row; the pivot row itself becomes zero
        if F.prime and F.p == 2:
            m ^= f[:, :, None] & prow[:, None, :]
        elif F.prime:
            m *= pv[:, None, None]
            m -= f[:, :, None] * prow[:, None, :]
            m %= F.p
        else:
            m = F.sub(F.mul(pv[:, None, None], m), F.mul(f[:, :, None], prow[:, None, :]))
        rank += has
    return rank


def rref(m: np.ndarray, F: GFq) -> tuple[np.ndarray, tuple[int, ...]]:
    """Canonical RREF of one matrix, zero rows dropped, plus pivot columns."""
    m = np.asarray(m, dtype=np.int64)
    if m.shape[0] == 0:
        return m.reshape(0, m.shape[1]), ()
    R, rank = batch_rref(m[None], F)
    R = R[0, : int(rank[0])]
    pivots = tuple(int(np.flatnonzero(row)[0]) for row in R)
    return R, pivots


def rank(m: np.ndarray, F: GFq) -> int:
    m = np.asarray(m, dtype=np.int64)
    if m.shape[0] == 0 or m.shape[1] == 0:
        return 0
    return int(batch_rank(m[None], F)[0])


def inverse_mod_p(m: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a square matrix over the prime field F_p."""
    m = np.asarray(m, dtype=np.int64) % p
    d = m.shape[0]
    aug = np.concatenate([m, np.eye(d, dtype=np.int64)], axis=1)
    R, rk = batch_rref(aug[None], GFq(p))
    if rk[0] != d or not np.array_equal(R[0, :, :d], np.eye(d, dtype=np.int64)):
        raise ValueError("matrix is singular")
    return R[0, :, d:]


_EXACT_FLOAT = 1 << 53


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """(a @ b) mod p for integer arrays with entries in [0, p); b is 2-D.

    Goes through float64 BLAS when every dot product stays below 2^53.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    inner = b.shape[0]
    if inner * (p - 1) ** 2 < _EXACT_FLOAT:
        flat = a.reshape(-1, inner).astype(np.float64)
        out = (flat @ b.astype(np.float64)).astype(np.int64)
        out %= p
        return out.reshape(a.shape[:-1] + (b.shape[1],))
    return (a.astype(np.int64) @ b.astype(np.int64)) % p


def matpow_mod_p(m: np.ndarray, k: int, p: int) -> np.ndarray:
    m = np.asarray(m, dtype=np.int64) % p
    result = np.eye(m.shape[0], dtype=np.int64)
    while k:
        if k & 1:
            result = matmul_mod(result, m, p)
        m = matmul_mod(m, m, p)
        k >>= 1
    return result
