"""Builders for the three subspace families.

* ``PolyBasis``:  b * <1, lam, ..., lam^(k-1)>_{F_q} with [F_q(lam):F_q] = t.
* ``MixedQ2``:    <1, lam, ..., lam^(l-1)>_{F_{q^2}} + lam^l F_q.
* ``RfwsMixed``:  Sbar + b <1, lam, ..., lam^(m-1)>_{F_q} with Sbar an
  l-dimensional F_{q^t}-subspace and Sbar + b F_{q^t} the whole field.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Optional

from .errors import (
    BadK,
    BadL,
    BadM,
    BadParams,
    BadShape,
    DirectSumFailure,
    NotADivisor,
    OddN,
    UnsupportedFamily,
    YNotFull,
    ZeroScalar,
)
from .gfext import Field, lcm
from .orbit import stabilizer_degree
from .subspace import Subspace, intersect, scalar_mul, span_fq, span_subfield, subspace_sum

FAMILIES = ("PolyBasis", "MixedQ2", "RfwsMixed")


def _check_divides(t: int, n: int) -> None:
    if t < 1 or n % t:
        raise NotADivisor(f"t={t} does not divide n={n}")


def _powers(field: Field, x: int, count: int, start: int = 0) -> list[int]:
    out = []
    y = field.pow(x, start)
    for _ in range(count):
        out.append(y)
        y = field.mul(y, x)
    return out


def polynomial_basis_code(field: Field, t: int, k: int, b: int = 1, lam: Optional[int] = None) -> Subspace:
    """b * <1, lam, ..., lam^(k-1)>_{F_q}; lam defaults to the generator of F_{q^t}."""
    _check_divides(t, field.n)
    if not 1 <= k <= t:
        raise BadK(f"need 1 <= k <= t, got k={k}, t={t}")
    if b == 0:
        raise ZeroScalar("b must be nonzero")
    if lam is None:
        lam = field.subfield_generator(t)
    elif lam == 0 or field.degree_over_fq(lam) != t:
        raise BadParams(f"lambda must have degree t={t} over F_q")
    S = span_fq(field, _powers(field, lam, k))
    return scalar_mul(b, S) if b != 1 else S


def mixed_q2_code(field: Field, t: int, l: int, lam: Optional[int] = None) -> Subspace:
    """<1, lam, ..., lam^(l-1)>_{F_{q^2}} + lam^l F_q, of dimension 2l + 1."""
    n = field.n
    if n % 2:
        raise OddN(f"n={n} must be even")
    _check_divides(2 * t, n)
    if not (1 <= l and 2 * l < t):
        raise BadL(f"need 1 <= l < t/2, got l={l}, t={t}")
    if lam is None:
        lam = field.subfield_generator(2 * t)
    elif lam == 0 or lcm(field.degree_over_fq(lam), 2) != 2 * t:
        raise BadParams(f"lambda must have degree t={t} over F_(q^2)")
    pows = _powers(field, lam, l + 1)
    S, direct = subspace_sum(span_subfield(field, pows[:l], 2), span_fq(field, [pows[l]]))
    if not direct or S.k != 2 * l + 1:
        raise DirectSumFailure("lam^l F_q meets the F_(q^2)-part")
    return S


@dataclass(frozen=True)
class MixedParts:
    """Pieces of S = Sbar + S_m; ``Y`` is Sbar + b F_{q^t}."""

    S: Subspace
    sbar: Subspace
    s_m: Subspace
    Y: Subspace
    direct: bool


def mixed_shape_parts(field: Field, t: int, l: int, m: int, b: int = 1,
                      sbar: Optional[Subspace] = None, lam: Optional[int] = None) -> MixedParts:
    """Assemble Sbar + b<1..lam^(m-1)> without requiring Y to be the whole field."""
    _check_divides(t, field.n)
    if l < 1:
        raise BadL(f"need l >= 1, got {l}")
    if not 0 < m < t:
        raise BadM(f"need 0 < m < t, got m={m}, t={t}")
    if b == 0:
        raise ZeroScalar("b must be nonzero")
    if lam is None:
        lam = field.subfield_generator(t)
    elif lam == 0 or field.degree_over_fq(lam) != t:
        raise BadParams(f"lambda must have degree t={t} over F_q")
    if sbar is None:
        sbar = span_subfield(field, _powers(field, field.gamma, l, start=1), t)
    else:
        if sbar.field is not field or sbar.k != t * l:
            raise BadParams(f"Sbar must have F_q-dimension t*l = {t * l}")
        if scalar_mul(field.subfield_generator(t), sbar) != sbar:
            raise BadParams("Sbar is not F_(q^t)-linear")
    s_m = scalar_mul(b, span_fq(field, _powers(field, lam, m)))
    S, direct = subspace_sum(sbar, s_m)
    Y, _ = subspace_sum(sbar, scalar_mul(b, span_subfield(field, [1], t)))
    return MixedParts(S, sbar, s_m, Y, direct)


def rfws_mixed_code(field: Field, t: int, l: int, m: int, b: int = 1,
                    sbar: Optional[Subspace] = None, lam: Optional[int] = None) -> Subspace:
    """The r-FWS subspace Sbar + b<1, lam, ..., lam^(m-1)>_{F_q} of dimension tl + m."""
    return rfws_mixed_parts(field, t, l, m, b, sbar, lam).S


def rfws_mixed_parts(field: Field, t: int, l: int, m: int, b: int = 1,
                     sbar: Optional[Subspace] = None, lam: Optional[int] = None) -> MixedParts:
    _check_divides(t, field.n)
    if field.n != t * (l + 1):
        raise BadShape(f"need n = t(l+1), got n={field.n}, t={t}, l={l}")
    if not 0 < m < t or 2 * m < t - 1:
        raise BadM(f"need 0 < m < t and 2m >= t-1, got m={m}, t={t}")
    parts = mixed_shape_parts(field, t, l, m, b, sbar, lam)
    bF = scalar_mul(b, span_subfield(field, [1], t))
    if intersect(parts.sbar, bF).k:
        raise DirectSumFailure("b F_(q^t) meets Sbar")
    if not parts.direct:
        raise DirectSumFailure("Sbar + S_m is not direct")
    if parts.Y.k != field.n:
        raise YNotFull("Sbar + b F_(q^t) is not the whole field")
    return parts


def h_y_relation(parts: MixedParts, t: int) -> str:
    """'Eq' when H(Y) = F_{q^t}, otherwise 'Strict'."""
    return "Eq" if stabilizer_degree(parts.Y) == t else "Strict"


@dataclass(frozen=True)
class ConstructionSpec:
    """A family name plus its integer parameters; scalars are given as gamma exponents."""

    family: str
    t: int
    k: Optional[int] = None
    l: Optional[int] = None
    m: Optional[int] = None
    b_exp: int = 0
    lam_exp: Optional[int] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise UnsupportedFamily(f"unknown family {self.family!r}")
        need = {"PolyBasis": ("k",), "MixedQ2": ("l",), "RfwsMixed": ("l", "m")}[self.family]
        for name in need:
            if getattr(self, name) is None:
                raise BadParams(f"{self.family} needs {name}")

    @property
    def dim(self) -> int:
        if self.family == "PolyBasis":
            return self.k
        if self.family == "MixedQ2":
            return 2 * self.l + 1
        return self.t * self.l + self.m

    def b(self, field: Field) -> int:
        return field.exp(self.b_exp)

    def lam(self, field: Field) -> Optional[int]:
        return None if self.lam_exp is None else field.exp(self.lam_exp)

    def default_lam(self, field: Field) -> int:
        lam = self.lam(field)
        if lam is not None:
            return lam
        return field.subfield_generator(2 * self.t if self.family == "MixedQ2" else self.t)

    def build(self, field: Field) -> Subspace:
        lam = self.lam(field)
        if self.family == "PolyBasis":
            return polynomial_basis_code(field, self.t, self.k, self.b(field), lam)
        if self.family == "MixedQ2":
            S = mixed_q2_code(field, self.t, self.l, lam)
            return scalar_mul(self.b(field), S) if self.b_exp else S
        return rfws_mixed_code(field, self.t, self.l, self.m, self.b(field), lam=lam)

    def params(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None and k != "family"}

    def to_json(self) -> dict:
        return {"family": self.family, **self.params()}

    @classmethod
    def from_json(cls, obj) -> "ConstructionSpec":
        if isinstance(obj, str):
            obj = json.loads(obj)
        fields = {"family", "t", "k", "l", "m", "b_exp", "lam_exp"}
        if not isinstance(obj, dict):
            raise BadParams("construction must be a JSON object")
        unknown = set(obj) - fields
        if unknown:
            raise BadParams(f"unknown construction keys {sorted(unknown)}")
        if "family" not in obj or "t" not in obj:
            raise BadParams("construction needs 'family' and 't'")
        bad = [k for k, v in obj.items() if k != "family" and v is not None and not isinstance(v, int)]
        if bad:
            raise BadParams(f"non-integer construction values for {bad}")
        return cls(**obj)
