"""Closed-form weight distributions and classification predicates.

All counts are exact Python integers; every division is checked to be exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import BadDegree, BadParams, InexactDivision, NotCoprime
from .gfext import Field
from .orbit import WeightDistribution
from .subspace import Subspace, intersection_dim, scalar_mul


def _exact_div(a: int, b: int) -> int:
    qt, rem = divmod(a, b)
    if rem:
        raise InexactDivision(f"{a} is not divisible by {b}")
    return qt


def _wd(q: int, n: int, counts: list[int]) -> WeightDistribution:
    return WeightDistribution(len(counts) - 1, tuple(counts), _exact_div(q**n - 1, q - 1), 1)


def family1_wd_formula(q: int, n: int, t: int, k: int) -> WeightDistribution:
    """Distribution of Orb(<1, lam, ..., lam^(k-1)>) with [F_q(lam):F_q] = t."""
    if q < 2 or not 1 <= k < t or n % t:
        raise BadParams(f"need 1 <= k < t and t | n, got n={n}, t={t}, k={k}")
    w = [0] * (k + 1)
    w[0] = 1
    if 2 * k <= t:
        for i in range(1, k):
            w[i] = (q + 1) * q ** (2 * i - 1)
        w[k] = _exact_div(q**n - q ** (2 * k - 1), q - 1)
    else:
        for i in range(1, t - k):
            w[i] = (q + 1) * q ** (2 * i - 1)
        w[t - k] = _exact_div(q**t - q ** (2 * (t - k) - 1), q - 1)
        w[k] = _exact_div(q**n - q**t, q - 1)
    return _wd(q, n, w)


def family2_wd_formula(q: int, n: int, l: int) -> WeightDistribution:
    """Distribution of Orb(<1, ..., lam^(l-1)>_{F_{q^2}} + lam^l F_q), k = 2l + 1."""
    if q < 2 or n % 2 or l < 1:
        raise BadParams(f"need even n and l >= 1, got n={n}, l={l}")
    k = 2 * l + 1
    w = [0] * (k + 1)
    w[0] = 1
    w[1] = q
    for r in range(1, l):
        w[2 * r + 1] = q ** (4 * r - 1) * (q * q - 1)
    for r in range(1, l + 1):
        w[2 * r] = q ** (4 * r - 2) * (q + 1) ** 2
    tail = _exact_div(
        (q + 1) * q * q * ((q ** (4 * l - 3) - q) * (q - 1) + (q + 1) * (q ** (4 * l) - 1)),
        q**4 - 1,
    )
    w[k] = _exact_div(q**n - 1, q - 1) - (q + 1) - tail
    if w[k] < 0:
        raise BadParams(f"n={n} too small for l={l}")
    return _wd(q, n, w)


def rfws_r(t: int, l: int, m: int) -> int:
    if 2 * m == t - 1:
        return t * l - 1
    if 2 * m == t:
        return t * l
    return t * (l - 1) + 2 * m


def rfws_wd_formula(q: int, n: int, t: int, l: int, m: int) -> WeightDistribution:
    """Distribution of the r-FWS family Sbar + <1, ..., lam^(m-1)>, n = t(l+1)."""
    if q < 2 or l < 1 or n != t * (l + 1) or not 0 < m < t or 2 * m < t - 1:
        raise BadParams(f"need n = t(l+1), 0 < m < t, 2m >= t-1; got n={n}, t={t}, l={l}, m={m}")
    k = t * l + m
    w = [0] * (k + 1)
    w[0] = 1
    if 2 * m == t - 1:
        for i in range(1, m):
            w[i] = (q + 1) * q ** (2 * i - 1)
        w[m] = _exact_div(q**t - q ** (2 * m - 1), q - 1)
        w[m + 1] = _exact_div(q**n - q**t, q - 1)
    elif 2 * m == t:
        for i in range(1, m):
            w[i] = (q + 1) * q ** (2 * i - 1)
        w[m] = _exact_div(q**n - q ** (2 * m - 1), q - 1)
    else:
        for i in range(1, t - m):
            w[i] = (q + 1) * q ** (2 * i - 1)
        w[t - m] = _exact_div(q**n - q ** (2 * (t - m) - 1), q - 1)
    return _wd(q, n, w)


def congruence_filter(wd: WeightDistribution, d: int) -> bool:
    """True iff every i >= 1 with w[i] > 0 has k = i (mod d)."""
    return all((wd.k - i) % d == 0 for i, c in enumerate(wd.counts) if i >= 1 and c > 0)


def sum_identity_holds(wd: WeightDistribution, q: int, n: int, d: int = 1) -> bool:
    return sum(wd.counts) == (q**n - 1) // (q**d - 1)


# -- classification ------------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    """Exists(r) when ``r`` is set, otherwise NotExists(reason)."""

    r: Optional[int] = None
    reason: Optional[str] = None

    @property
    def exists(self) -> bool:
        return self.r is not None

    def __str__(self) -> str:
        return f"Exists({self.r})" if self.exists else f"NotExists({self.reason})"

    def to_json(self):
        return {"exists": True, "r": self.r} if self.exists else {"exists": False, "reason": self.reason}


def rfws_classify(q: int, n: int, t: int, l: int, m: int) -> Classification:
    if q < 2 or t < 1 or n % t or not 0 < m < t or l < 1:
        raise BadParams(f"need t | n, 0 < m < t, l > 0; got n={n}, t={t}, l={l}, m={m}")
    if 2 * m < t - 1:
        return Classification(reason="SmallM")
    if n != t * (l + 1):
        return Classification(reason="YNotFull")
    return Classification(r=rfws_r(t, l, m))


def family1_classify(q: int, n: int, t: int, k: int) -> Classification:
    """r-FWS status of Orb(<1, ..., lam^(k-1)>), read off the closed form."""
    if q < 2 or not 1 <= k < t or n % t:
        raise BadParams(f"need 1 <= k < t and t | n, got n={n}, t={t}, k={k}")
    if 2 * k <= t + 1:
        return Classification(r=0) if n > t or 2 * k <= t else Classification(r=2 * k - t)
    if n == t:
        return Classification(r=2 * k - t)
    return Classification(reason="InteriorZero")


def th64_zero_predictions(q: int, t: int, l: int, m: int, hY: str) -> set[int]:
    """Indices i with w[i] forced to zero for Sbar + b<1..lam^(m-1)>, k = tl + m.

    ``hY`` is "Eq" when H(Y) = F_{q^t} and "Strict" when H(Y) is larger.
    """
    if hY not in ("Eq", "Strict"):
        raise BadParams("hY must be 'Eq' or 'Strict'")
    k = t * l + m
    zeros: set[int] = set()
    if m < t - 1 and hY == "Eq":
        zeros.add(m + 1)
    if 2 * m > t + 1:
        zeros.update(k - j for j in range(1, 2 * m - t))
    if hY == "Strict":
        zeros.update(k - j for j in range(1, 2 * m))
    if t == 3 and m == 2 and hY == "Eq":
        zeros.add(2)
    return {i for i in zeros if 1 <= i <= k}


# -- polynomial pairs over F_{q^2} ---------------------------------------------


def _trim(p: Sequence[int]) -> list[int]:
    p = [int(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_gcd(field: Field, a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Monic gcd of two polynomials with coefficients in the field (constant first)."""
    a, b = _trim(a), _trim(b)
    while b:
        inv_lead = field.inv(b[-1])
        while len(a) >= len(b):
            f = field.mul(a[-1], inv_lead)
            shift = len(a) - len(b)
            for j, c in enumerate(b):
                a[shift + j] = field.sub(a[shift + j], field.mul(f, c))
            a = _trim(a)
        a, b = b, a
    if not a:
        return []
    inv_lead = field.inv(a[-1])
    return [field.mul(c, inv_lead) for c in a]


def poly_eval(field: Field, p: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(p):
        acc = field.add(field.mul(acc, x), c)
    return acc


@dataclass(frozen=True)
class PolyPair:
    """Coprime p1 (monic) and p2 over F_{q^2}, coefficients listed constant first."""

    field: Field
    p1: tuple[int, ...]
    p2: tuple[int, ...]

    def __post_init__(self):
        f = self.field
        p1, p2 = _trim(self.p1), _trim(self.p2)
        object.__setattr__(self, "p1", tuple(p1))
        object.__setattr__(self, "p2", tuple(p2))
        if f.n % 2:
            raise BadParams("F_(q^2) must be a subfield")
        if not p1 or p1[-1] != 1:
            raise BadDegree("p1 must be monic")
        if not p2:
            raise BadDegree("p2 must be nonzero")
        if any(not f.in_subfield(c, 2) for c in p1 + p2):
            raise BadParams("coefficients must lie in F_(q^2)")
        if len(p2) > len(p1):
            raise BadDegree("deg p2 must not exceed deg p1")
        if len(poly_gcd(f, p1, p2)) != 1:
            raise NotCoprime("p1 and p2 share a factor")

    @property
    def r(self) -> int:
        return len(self.p1) - 1

    @property
    def top_coeff(self) -> int:
        """Coefficient of x^r in p2 (zero when deg p2 < r)."""
        return self.p2[self.r] if len(self.p2) == len(self.p1) else 0

    def mu(self, lam: int) -> int:
        f = self.field
        return f.div(poly_eval(f, self.p1, lam), poly_eval(f, self.p2, lam))


def predict_mu_dim(pair: PolyPair, l: int) -> int:
    """Predicted dim(S ∩ mu S) for mu = p1(lam)/p2(lam) and the k = 2l+1 mixed subspace."""
    r = pair.r
    if pair.field.in_subfield(pair.top_coeff, 1):
        if r > l:
            raise BadDegree(f"need r <= l, got r={r}, l={l}")
        return 2 * (l - r) + 1
    if r > l - 1 and r > 0:
        raise BadDegree(f"need r <= l-1 when the top coefficient is outside F_q, got r={r}")
    return 2 * (l - r)


def verify_mu_prediction(S: Subspace, pair: PolyPair, lam: int, l: int) -> tuple[int, int]:
    """(predicted, computed) dim(S ∩ mu S)."""
    mu = pair.mu(lam)
    return predict_mu_dim(pair, l), intersection_dim(S, scalar_mul(mu, S))


def random_poly_pair(field: Field, l: int, rng: np.random.Generator, max_tries: int = 1000) -> PolyPair:
    """A uniformly drawn valid pair from either the even or the odd case."""
    fq2 = [field.exp(int(j) * (field.order // (field.q**2 - 1))) for j in range(field.q**2 - 1)]
    fq2 = [0] + fq2
    outside = [c for c in fq2 if not field.in_subfield(c, 1)]
    inside = [c for c in fq2 if field.in_subfield(c, 1)]

    def pick(pool):
        return pool[int(rng.integers(len(pool)))]

    for _ in range(max_tries):
        even = l >= 2 and rng.random() < 0.5
        if even:
            r = int(rng.integers(1, l))
            p2 = [pick(fq2) for _ in range(r)] + [pick(outside)]
        else:
            r = int(rng.integers(1, l + 1))
            p2 = [pick(fq2) for _ in range(r)] + [pick(inside)]
        p1 = [pick(fq2) for _ in range(r)] + [1]
        if not _trim(p2):
            continue
        if len(poly_gcd(field, p1, p2)) == 1:
            return PolyPair(field, tuple(p1), tuple(p2))
    raise RuntimeError("could not draw a coprime pair")
