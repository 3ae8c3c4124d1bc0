"""Arithmetic in F_{q^n} with q = p^e, realised as F_p[X]/(modulus).

Elements are plain Python ints: the base-p digit string of the coefficient
vector in the polynomial basis (constant term = least significant digit).
Because the modulus and the primitive element ``gamma`` are chosen by a fixed
lexicographic rule, exponent labels ``gamma^j`` are reproducible.

F_q coordinates of an element are taken in the F_q-basis 1, gamma, ...,
gamma^(n-1). Each coordinate is an element of F_q, encoded as 0..q-1 via its
base-p digits in the F_p-basis 1, g, ..., g^(e-1) of F_q, where g is the
primitive element of F_q obtained from gamma.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd, isqrt

import numpy as np

from .errors import NotADivisor, NotPrime, SizeCapExceeded
from .linalg import GFq, inverse_mod_p, matmul_mod, matpow_mod_p

SIZE_CAP = 1 << 24
TABLE_LIMIT = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n by trial division."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def prime_power(q: int) -> tuple[int, int]:
    """Split q = p^e; raises NotPrime if q is not a prime power."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    p = prime_factors(q)[0]
    e = 0
    r = q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise NotPrime(f"{q} is not a prime power")
    return p, e


# -- polynomials over F_p as coefficient lists, constant term first ----------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], f: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        _trim(a)
    return a


def _poly_mulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    return _poly_mod([c % p for c in prod], f, p)


def _poly_powmod(base: list[int], k: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(base, f, p)
    while k:
        if k & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        k >>= 1
    return result


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _poly_sub(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _trim(out)


def is_irreducible(f: list[int], p: int) -> bool:
    """Rabin's test for a monic f over F_p."""
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = [0, 1]
    if _poly_sub(_poly_powmod(x, p**d, f, p), x, p):
        return False
    for ell in prime_factors(d):
        h = _poly_sub(_poly_powmod(x, p ** (d // ell), f, p), x, p)
        if len(_poly_gcd(f, h, p)) != 1:
            return False
    return True


def smallest_irreducible(p: int, d: int) -> list[int]:
    """Lexicographically smallest monic irreducible of degree d (high degree first)."""
    for low in range(p**d):
        coeffs = [(low // p**i) % p for i in range(d)] + [1]
        if is_irreducible(coeffs, p):
            return coeffs
    raise AssertionError("unreachable: irreducible polynomials exist in every degree")


class Field:
    """The field F_{q^n}, q = p^e, with a fixed primitive element gamma.

    Build instances through :func:`build_field`, which caches them so that
    fields with equal parameters are the same object.
    """

    def __init__(self, p: int, e: int = 1, n: int = 1):
        if not is_prime(p):
            raise NotPrime(f"p={p} is not prime")
        if e < 1 or n < 1:
            raise ValueError("e and n must be positive")
        self.p, self.e, self.n = p, e, n
        self.q = p**e
        self.deg = e * n
        self.size = p**self.deg
        if self.size > SIZE_CAP:
            raise SizeCapExceeded(f"field size {p}^{self.deg} exceeds 2^24")
        self.order = self.size - 1
        self.modulus = smallest_irreducible(p, self.deg)
        self._weights = p ** np.arange(self.deg, dtype=np.int64)
        self._order_primes = prime_factors(self.order)
        self.has_tables = self.size <= TABLE_LIMIT
        self._exp = self._log = None

        self.gamma = self._find_generator()
        self.gamma_matrix = self.mul_matrix(self.gamma)
        if self.has_tables:
            self._build_tables()

        # F_q = F_{q^1} sits inside as the fixed field of x -> x^q
        self.fq_generator = self.pow(self.gamma, self.order // (self.q - 1))
        basis = []
        g_pows = [1]
        for _ in range(1, e):
            g_pows.append(self.mul(g_pows[-1], self.fq_generator))
        gam = 1
        for _ in range(n):
            basis.extend(self.mul(g, gam) for g in g_pows)
            gam = self.mul(gam, self.gamma)
        self._coord_fwd = self.vec_array(np.array(basis, dtype=np.int64))
        self._coord_inv = inverse_mod_p(self._coord_fwd, p)
        self._digit_weights = p ** np.arange(e, dtype=np.int64)
        self.fq = self._build_fq()
        self.fp = self.fq if e == 1 else GFq(p)

    def __repr__(self) -> str:
        return f"Field(p={self.p}, e={self.e}, n={self.n})"

    def __reduce__(self):
        return (build_field, (self.p, self.e, self.n))

    @property
    def params(self) -> tuple[int, int, int]:
        return (self.p, self.e, self.n)

    # -- construction helpers ----------------------------------------------

    def _find_generator(self) -> int:
        if self.order == 1:
            return 1
        for x in range(1, self.size):
            if all(self._pow_slow(x, self.order // ell) != 1 for ell in self._order_primes):
                return x
        raise AssertionError("unreachable: F^* is cyclic")

    def _build_tables(self) -> None:
        p, N = self.p, self.order
        block_len = min(N, 1024)
        block = np.empty((block_len, self.deg), dtype=np.int64)
        v = self.vec(1)
        for j in range(block_len):
            block[j] = v
            v = v @ self.gamma_matrix % p
        step = matpow_mod_p(self.gamma_matrix, block_len, p)
        parts = []
        cur = block
        for _ in range(0, N, block_len):
            parts.append(cur)
            cur = matmul_mod(cur, step, p)
        exp = (np.concatenate(parts)[:N] @ self._weights).astype(np.int64)
        log = np.full(self.size, -1, dtype=np.int64)
        log[exp] = np.arange(N, dtype=np.int64)
        if (log[1:] < 0).any():
            raise AssertionError("gamma is not primitive")
        self._exp, self._log = exp, log

    def _build_fq(self) -> GFq:
        if self.e == 1:
            return GFq(self.p)
        q = self.q
        enc = np.zeros(q - 1, dtype=np.int64)
        x = 1
        for j in range(q - 1):
            c = self.coords(x)
            enc[j] = c[0]
            x = self.mul(x, self.fq_generator)
        log = np.zeros(q, dtype=np.int64)
        log[enc] = np.arange(q - 1)
        table = np.zeros((q, q), dtype=np.int64)
        a = np.arange(1, q)
        table[1:, 1:] = enc[(log[a][:, None] + log[a][None, :]) % (q - 1)]
        return GFq(self.p, self.e, mul_table=table)

    # -- encodings -----------------------------------------------------------

    def vec(self, x: int) -> np.ndarray:
        """F_p coefficient vector of x in the polynomial basis."""
        return (x // self._weights) % self.p

    def vec_array(self, xs: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        return (xs[..., None] // self._weights) % self.p

    def from_vec_array(self, v: np.ndarray) -> np.ndarray:
        return np.asarray(v, dtype=np.int64) @ self._weights

    def _digits(self, x: int) -> list[int]:
        return [(x // self.p**i) % self.p for i in range(self.deg)]

    def _undigits(self, d: list[int]) -> int:
        return sum(c * self.p**i for i, c in enumerate(d))

    # -- scalar arithmetic ---------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return int(self.from_vec_array((self.vec(a) + self.vec(b)) % self.p))

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return int(self.from_vec_array((-self.vec(a)) % self.p))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def add_array(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return np.bitwise_xor(a, b)
        return self.from_vec_array((self.vec_array(a) + self.vec_array(b)) % self.p)

    def _mul_slow(self, a: int, b: int) -> int:
        return self._undigits(_poly_mulmod(_trim(self._digits(a)), _trim(self._digits(b)), self.modulus, self.p))

    def _pow_slow(self, a: int, k: int) -> int:
        return self._undigits(_poly_powmod(_trim(self._digits(a)), k, self.modulus, self.p))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._log is not None:
            return int(self._exp[(self._log[a] + self._log[b]) % self.order])
        return self._mul_slow(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self._log is not None:
            return int(self._exp[(-self._log[a]) % self.order])
        return self._pow_slow(a, self.order - 1)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if k == 0 else 0
        if self._log is not None:
            return int(self._exp[(self._log[a] * k) % self.order])
        return self._pow_slow(a, k % self.order)

    def exp(self, j: int) -> int:
        """gamma^j."""
        if self._exp is not None:
            return int(self._exp[j % self.order])
        return self._pow_slow(self.gamma, j % self.order)

    def log(self, a: int) -> int:
        """Discrete log to base gamma, in 0..q^n-2."""
        if a == 0:
            raise ZeroDivisionError("log of zero")
        if self._log is not None:
            return int(self._log[a])
        return self._dlog(a)

    def exp_array(self, js: np.ndarray) -> np.ndarray:
        js = np.asarray(js, dtype=np.int64) % self.order
        if self._exp is not None:
            return self._exp[js]
        return np.array([self.exp(int(j)) for j in js.ravel()], dtype=np.int64).reshape(js.shape)

    def log_array(self, xs: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        if self._log is not None:
            return self._log[xs]
        return np.array([self.log(int(x)) for x in xs.ravel()], dtype=np.int64).reshape(xs.shape)

    def _dlog(self, a: int) -> int:
        # Pohlig-Hellman over the prime-power parts of q^n - 1, baby-step giant-step inside
        N = self.order
        residues, moduli = [], []
        for ell in self._order_primes:
            ea = 0
            while N % ell ** (ea + 1) == 0:
                ea += 1
            pe = ell**ea
            g0 = self._pow_slow(self.gamma, N // pe)
            h0 = self._pow_slow(a, N // pe)
            g_ell = self._pow_slow(g0, pe // ell)
            x = 0
            for i in range(ea):
                t = self._mul_slow(h0, self._pow_slow(g0, (-x) % pe))
                t = self._pow_slow(t, ell ** (ea - 1 - i))
                x += self._bsgs(g_ell, t, ell) * ell**i
            residues.append(x)
            moduli.append(pe)
        x, m = 0, 1
        for r, md in zip(residues, moduli):
            # combine x mod m with r mod md
            k = ((r - x) * pow(m, -1, md)) % md
            x, m = x + m * k, m * md
        return x % N

    def _bsgs(self, g: int, h: int, order: int) -> int:
        s = isqrt(order) + 1
        table = {}
        cur = 1
        for j in range(s):
            table.setdefault(cur, j)
            cur = self._mul_slow(cur, g)
        giant = self._pow_slow(g, (order - s) % order)
        cur = h
        for i in range(s + 1):
            if cur in table:
                return (i * s + table[cur]) % order
            cur = self._mul_slow(cur, giant)
        raise AssertionError("discrete log not found")

    def order_of(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        o = self.order
        for ell in self._order_primes:
            while o % ell == 0 and self.pow(a, o // ell) == 1:
                o //= ell
        return o

    def frobenius(self, x: int, i: int) -> int:
        """x^(q^i), with i taken mod n."""
        i %= self.n
        if x == 0 or i == 0:
            return x
        if self._log is not None:
            return int(self._exp[(self._log[x] * pow(self.q, i, self.order)) % self.order])
        return self._pow_slow(x, self.q**i)

    # -- F_p-linear maps -----------------------------------------------------

    def mul_matrix(self, alpha: int) -> np.ndarray:
        """F_p matrix M with vec(x * alpha) = vec(x) @ M."""
        rows = [self.vec(self._mul_slow(self.p**i, alpha)) for i in range(self.deg)]
        return np.array(rows, dtype=np.int64).reshape(self.deg, self.deg)

    def frobenius_matrix(self, i: int) -> np.ndarray:
        """F_p matrix of x -> x^(q^i)."""
        rows = [self.vec(self.frobenius(self.p**r, i)) for r in range(self.deg)]
        return np.array(rows, dtype=np.int64).reshape(self.deg, self.deg)

    # -- subfields -----------------------------------------------------------

    def _check_divisor(self, m: int) -> None:
        if m < 1 or self.n % m:
            raise NotADivisor(f"{m} does not divide n={self.n}")

    def subfield_generator(self, m: int) -> int:
        """gamma^((q^n-1)/(q^m-1)), a generator of F_{q^m}^*."""
        self._check_divisor(m)
        return self.pow(self.gamma, self.order // (self.q**m - 1))

    def in_subfield(self, x: int, m: int) -> bool:
        self._check_divisor(m)
        return self.frobenius(x, m) == x

    def degree_over_fq(self, x: int) -> int:
        """[F_q(x) : F_q]."""
        for m in divisors(self.n):
            if self.frobenius(x, m) == x:
                return m
        raise AssertionError("unreachable")

    def subfield_basis(self, m: int) -> list[int]:
        """F_q-basis 1, g_m, ..., g_m^(m-1) of F_{q^m}."""
        g = self.subfield_generator(m)
        out = [1]
        for _ in range(1, m):
            out.append(self.mul(out[-1], g))
        return out

    def fq_elements(self) -> list[int]:
        """The elements of F_q as field elements, indexed by their 0..q-1 encoding."""
        return [self.fq_embed(c) for c in range(self.q)]

    def fq_embed(self, c: int) -> int:
        return self.from_coords([c] + [0] * (self.n - 1))

    # -- F_q coordinates -----------------------------------------------------

    def coords(self, x: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self.coords_array(np.array([x]))[0])

    def from_coords(self, c) -> int:
        return int(self.from_coords_array(np.asarray(c, dtype=np.int64)[None])[0])

    def coords_from_vec(self, v: np.ndarray) -> np.ndarray:
        """F_q coordinates from F_p vectors, shape (..., deg) -> (..., n)."""
        d = matmul_mod(v, self._coord_inv, self.p)
        if self.e == 1:
            return d
        d = d.reshape(d.shape[:-1] + (self.n, self.e))
        return d @ self._digit_weights

    def vec_from_coords(self, c: np.ndarray) -> np.ndarray:
        c = np.asarray(c, dtype=np.int64)
        if self.e > 1:
            c = ((c[..., None] // self._digit_weights) % self.p).reshape(c.shape[:-1] + (self.deg,))
        return matmul_mod(c, self._coord_fwd, self.p)

    def coords_array(self, xs: np.ndarray) -> np.ndarray:
        return self.coords_from_vec(self.vec_array(xs))

    def from_coords_array(self, c: np.ndarray) -> np.ndarray:
        return self.from_vec_array(self.vec_from_coords(c))

    # -- misc ------------------------------------------------------------------

    def random_nonzero(self, rng: np.random.Generator) -> int:
        return self.exp(int(rng.integers(0, self.order)))

    def random_element(self, rng: np.random.Generator) -> int:
        return int(rng.integers(0, self.size))

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "e": self.e,
            "n": self.n,
            "modulus": list(self.modulus),
            "gamma": [int(c) for c in self.vec(self.gamma)],
        }

    def element_to_json(self, x: int) -> dict:
        if x == 0:
            return {"zero": True}
        return {"exp": self.log(x)}

    def element_from_json(self, obj: dict) -> int:
        if obj.get("zero"):
            return 0
        return self.exp(int(obj["exp"]))


@lru_cache(maxsize=None)
def build_field(p: int, e: int = 1, n: int = 1) -> Field:
    """The cached field F_{(p^e)^n}."""
    return Field(p, e, n)


def field_for_q(q: int, n: int) -> Field:
    p, e = prime_power(q)
    return build_field(p, e, n)


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)
