"""Parameter sweeps and named verification suites shared by the CLI and tests."""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterator, Optional

import numpy as np

from .constructions import ConstructionSpec, mixed_shape_parts, rfws_mixed_parts
from .errors import InvariantViolation
from .formulas import (
    Classification,
    congruence_filter,
    family1_classify,
    family1_wd_formula,
    family2_wd_formula,
    random_poly_pair,
    rfws_classify,
    rfws_wd_formula,
    verify_mu_prediction,
)
from .gfext import Field, divisors, field_for_q
from .isometry import OrbitImageChecker, SemilinearMap, apply_map, predicted_image
from .oracles import count_coprime_pairs, naive_weight_distribution
from .orbit import WeightDistribution, weight_distribution
from .subspace import (
    intersect,
    intersection_dim,
    scalar_mul,
    span_fq,
    span_subfield,
    subspace_sum,
    whole_space,
    zero_subspace,
)

SWEEP_FAMILIES = ("PolyBasis", "MixedQ2", "RfwsMixed")


@dataclass(frozen=True)
class SweepPoint:
    q: int
    n: int
    spec: ConstructionSpec

    @property
    def field(self) -> Field:
        return field_for_q(self.q, self.n)

    def sort_key(self):
        s = self.spec
        return (SWEEP_FAMILIES.index(s.family), self.q, self.n, s.t, s.k or 0, s.l or 0, s.m or 0)


def sweep_points(family: str, qs, max_size: int, include_invalid: bool = False) -> list[SweepPoint]:
    """Every valid parameter point of a family with q^n <= max_size, sorted.

    With ``include_invalid`` the r-FWS grid also lists points with 2m < t-1,
    which have no r-FWS construction.
    """
    pts = []
    for q in sorted(set(qs)):
        n = 1
        while q**n <= max_size:
            for t in divisors(n):
                if family == "PolyBasis":
                    pts += [SweepPoint(q, n, ConstructionSpec("PolyBasis", t, k=k)) for k in range(1, t)]
                elif family == "MixedQ2":
                    if n % (2 * t) == 0:
                        pts += [SweepPoint(q, n, ConstructionSpec("MixedQ2", t, l=l))
                                for l in range(1, t) if 2 * l < t]
                elif family == "RfwsMixed":
                    l = n // t - 1
                    if l >= 1:
                        pts += [SweepPoint(q, n, ConstructionSpec("RfwsMixed", t, l=l, m=m))
                                for m in range(1, t) if include_invalid or 2 * m >= t - 1]
                else:
                    raise ValueError(f"unknown family {family!r}")
            n += 1
    return sorted(pts, key=SweepPoint.sort_key)


def formula_for(point: SweepPoint) -> WeightDistribution:
    s, q, n = point.spec, point.q, point.n
    if s.family == "PolyBasis":
        return family1_wd_formula(q, n, s.t, s.k)
    if s.family == "MixedQ2":
        return family2_wd_formula(q, n, s.l)
    return rfws_wd_formula(q, n, s.t, s.l, s.m)


def classify(point: SweepPoint) -> Classification:
    s, q, n = point.spec, point.q, point.n
    if s.family == "PolyBasis":
        return family1_classify(q, n, s.t, s.k)
    if s.family == "MixedQ2":
        return Classification(r=0)
    return rfws_classify(q, n, s.t, s.l, s.m)


@dataclass
class SweepRow:
    point: SweepPoint
    empirical: Optional[WeightDistribution]
    formula: Optional[WeightDistribution]
    predicted: Classification
    runtime_ms: float

    @property
    def match(self) -> bool:
        """Formula equals brute force, or for a NotExists point the code is not r-FWS."""
        if self.formula is not None:
            return self.empirical is not None and self.empirical.counts == self.formula.counts
        return self.empirical is not None and not self.empirical.verdict.is_rfws

    @property
    def verdict(self) -> str:
        return str(self.empirical.verdict) if self.empirical is not None else "n/a"

    def as_dict(self, timing: bool = True) -> dict:
        s = self.point.spec
        d = {
            "family": s.family,
            "q": self.point.q,
            "n": self.point.n,
            "t": s.t,
            "k": self.empirical.k if self.empirical else s.dim,
            "l": s.l if s.l is not None else "",
            "m": s.m if s.m is not None else "",
            "stab_degree": self.empirical.stab_degree if self.empirical else "",
            "orbit_size": self.empirical.orbit_size if self.empirical else "",
            "counts": " ".join(map(str, self.empirical.counts)) if self.empirical else "",
            "verdict": self.verdict,
            "predicted": str(self.predicted),
            "match": self.match,
        }
        if timing:
            d["runtime_ms"] = round(self.runtime_ms, 3)
        return d


def evaluate_point(point: SweepPoint, workers: int = 1) -> SweepRow:
    f = point.field
    s = point.spec
    predicted = classify(point)
    t0 = time.perf_counter()
    if s.family == "RfwsMixed" and not predicted.exists:
        S = mixed_shape_parts(f, s.t, s.l, s.m).S
        formula = None
    else:
        S = s.build(f)
        formula = formula_for(point)
    emp = weight_distribution(S, workers=workers)
    ms = (time.perf_counter() - t0) * 1e3
    return SweepRow(point, emp, formula, predicted, ms)


# -- verification suites -----------------------------------------------------


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, **self.detail}


WORKED_EXAMPLES = [
    # (q, n, spec, expected counts, expected r)
    (2, 10, ConstructionSpec("MixedQ2", 5, l=2), (1, 2, 36, 24, 576, 384), 0),
    (3, 10, ConstructionSpec("MixedQ2", 5, l=2), (1, 3, 144, 216, 11664, 17496), 0),
    (5, 10, ConstructionSpec("MixedQ2", 5, l=2), (1, 5, 900, 3000, 562500, 1875000), 0),
    (2, 10, ConstructionSpec("RfwsMixed", 5, l=1, m=2), (1, 6, 24, 992, 0, 0, 0, 0), 4),
    (2, 16, ConstructionSpec("RfwsMixed", 4, l=3, m=2), (1, 6, 65528) + (0,) * 12, 12),
    (3, 9, ConstructionSpec("RfwsMixed", 3, l=2, m=2), (1, 9840) + (0,) * 7, 7),
]


def suite_worked_examples(workers: int = 1) -> Iterator[CheckResult]:
    for q, n, spec, expected, r in WORKED_EXAMPLES:
        point = SweepPoint(q, n, spec)
        row = evaluate_point(point, workers)
        ok = (
            row.empirical.counts == expected
            and row.formula.counts == expected
            and row.empirical.verdict.r == r
        )
        yield CheckResult(
            f"example {spec.family} q={q} n={n}",
            ok,
            {"counts": list(row.empirical.counts), "expected": list(expected), "r": row.empirical.verdict.r,
             "runtime_ms": round(row.runtime_ms, 1)},
        )


def suite_formulas(qs=(2, 3), max_size: int = 1 << 14) -> Iterator[CheckResult]:
    for fam in SWEEP_FAMILIES:
        for point in sweep_points(fam, qs, max_size):
            row = evaluate_point(point)
            yield CheckResult(f"formula {fam} q={point.q} n={point.n} {point.spec.params()}", row.match,
                              {"counts": list(row.empirical.counts), "formula": list(row.formula.counts)})


def suite_oracle(qs=(2, 3), max_size: int = 1 << 12) -> Iterator[CheckResult]:
    for fam in SWEEP_FAMILIES:
        for point in sweep_points(fam, qs, max_size):
            S = point.spec.build(point.field)
            fast, naive = weight_distribution(S), naive_weight_distribution(S)
            yield CheckResult(f"oracle {fam} q={point.q} n={point.n} {point.spec.params()}", fast == naive,
                              {"fast": list(fast.counts), "naive": list(naive.counts)})


def suite_congruence(qs=(2, 3), max_size: int = 1 << 12) -> Iterator[CheckResult]:
    """Lemma-level invariants on every sweep distribution, plus subfields as subspaces."""
    dists = []
    for fam in SWEEP_FAMILIES:
        for point in sweep_points(fam, qs, max_size):
            dists.append((f"{fam} q={point.q} n={point.n} {point.spec.params()}",
                          point.q, point.n, weight_distribution(point.spec.build(point.field))))
    for q in qs:
        n = 1
        while q**n <= max_size:
            f = field_for_q(q, n)
            for m in divisors(n):
                dists.append((f"subfield m={m} q={q} n={n}", q, n, weight_distribution(span_subfield(f, [1], m))))
            n += 1
    for name, q, n, wd in dists:
        ok = congruence_filter(wd, wd.stab_degree) and sum(wd.counts) == (q**n - 1) // (q**wd.stab_degree - 1)
        yield CheckResult(f"congruence+sum {name}", ok, {"counts": list(wd.counts), "d": wd.stab_degree})


def suite_mu(pairs: int = 200, seed: int = 0) -> Iterator[CheckResult]:
    rng = np.random.default_rng(seed)
    for q in (2, 3):
        f = field_for_q(q, 10)
        for l in (1, 2):
            spec = ConstructionSpec("MixedQ2", 5, l=l)
            S = spec.build(f)
            lam = spec.default_lam(f)
            bad = 0
            for _ in range(pairs):
                pred, got = verify_mu_prediction(S, random_poly_pair(f, l, rng), lam, l)
                bad += pred != got
            yield CheckResult(f"mu-prediction q={q} l={l}", bad == 0, {"pairs": pairs, "mismatches": bad})


ISOMETRY_CASES = [
    (2, 8, ConstructionSpec("PolyBasis", 4, k=3)),
    (2, 12, ConstructionSpec("PolyBasis", 12, k=4)),
    (2, 12, ConstructionSpec("PolyBasis", 6, k=2, b_exp=5)),
    (2, 10, ConstructionSpec("MixedQ2", 5, l=2)),
    (2, 12, ConstructionSpec("MixedQ2", 3, l=1)),
    (3, 6, ConstructionSpec("PolyBasis", 6, k=3)),
    (3, 6, ConstructionSpec("PolyBasis", 3, k=2)),
    (3, 6, ConstructionSpec("MixedQ2", 3, l=1, b_exp=7)),
    (4, 6, ConstructionSpec("MixedQ2", 3, l=1)),
]


def isometry_sweep_cases(qs=(2, 3), max_size: int = 1 << 12) -> list:
    """Every valid sweep point as a (q, n, spec) isometry case."""
    return [(p.q, p.n, p.spec) for fam in SWEEP_FAMILIES for p in sweep_points(fam, qs, max_size)]


def suite_isometry(alphas: int = 20, seed: int = 0, cases=None) -> Iterator[CheckResult]:
    rng = np.random.default_rng(seed)
    for q, n, spec in cases or ISOMETRY_CASES:
        f = field_for_q(q, n)
        S = spec.build(f)
        wd = weight_distribution(S)
        checker = OrbitImageChecker(S)
        failures = []
        for i in range(n):
            for _ in range(alphas):
                psi = SemilinearMap(f, i, f.random_nonzero(rng))
                image = apply_map(psi, S)
                if spec.family != "RfwsMixed" and image != predicted_image(spec, psi):
                    failures.append(("predicted", i, f.log(psi.alpha)))
                if not checker.check(psi):
                    failures.append(("orbit", i, f.log(psi.alpha)))
                if weight_distribution(image).counts != wd.counts:
                    failures.append(("weights", i, f.log(psi.alpha)))
        yield CheckResult(f"isometry {spec.family} q={q} n={n} {spec.params()}", not failures,
                          {"maps": n * alphas, "failures": failures[:10]})


def decomposition_violations(q: int, n: int, t: int, l: int, m: int, samples: int = 500,
                             seed: int = 0) -> dict:
    """Count failures of the S ∩ bS decomposition and of the S ∩ alpha S dimension bound."""
    f = field_for_q(q, n)
    parts = rfws_mixed_parts(f, t, l, m)
    S, sbar, s_m = parts.S, parts.sbar, parts.s_m
    g = f.subfield_generator(t)
    decomp_bad = 0
    b = 1
    for _ in range(q**t - 1):
        lhs = intersect(S, scalar_mul(b, S))
        rhs, direct = subspace_sum(sbar, intersect(s_m, scalar_mul(b, s_m)))
        decomp_bad += (lhs != rhs) or not direct
        b = f.mul(b, g)
    rng = np.random.default_rng(seed)
    bound_bad = 0
    for _ in range(samples):
        a = f.random_nonzero(rng)
        lhs = intersection_dim(S, scalar_mul(a, S))
        bar = intersection_dim(sbar, scalar_mul(a, sbar))
        if bar % t:
            raise InvariantViolation("Sbar ∩ alpha Sbar is not F_(q^t)-linear")
        bound_bad += lhs > 2 * m + t * (bar // t)
    return {"b_values": q**t - 1, "decomposition_violations": decomp_bad, "alphas": samples,
            "bound_violations": bound_bad}


def suite_decomposition(samples: int = 500, seed: int = 0) -> Iterator[CheckResult]:
    for q, n, t, l, m in ((2, 10, 5, 1, 2), (3, 9, 3, 2, 2)):
        res = decomposition_violations(q, n, t, l, m, samples, seed)
        ok = res["decomposition_violations"] == 0 and res["bound_violations"] == 0
        yield CheckResult(f"decomposition q={q} n={n} t={t} l={l} m={m}", ok, res)


def suite_coprime() -> Iterator[CheckResult]:
    """Unconstrained ratio 1 - 1/q over all degree pairs, and the monic equal-degree count."""
    for q in (2, 3, 4, 5):
        for da in range(4):
            for db in range(4):
                if da == db == 0:
                    continue
                c, total = count_coprime_pairs(q, da, db)
                yield CheckResult(f"coprime ratio q={q} deg=({da},{db})", c * q == total * (q - 1),
                                  {"coprime": c, "total": total})
        for r in (1, 2):
            c, total = count_coprime_pairs(q, r, r, True, True)
            yield CheckResult(f"coprime monic q={q} r={r}", c == q ** (2 * r - 1) * (q - 1),
                              {"coprime": c, "expected": q ** (2 * r - 1) * (q - 1)})


def suite_trivial() -> Iterator[CheckResult]:
    for q, n in ((2, 1), (2, 10), (3, 5), (4, 3)):
        f = field_for_q(q, n)
        g = f.gamma
        yield CheckResult(f"field q={q} n={n} gamma order", f.order_of(g) == f.order, {})
        yield CheckResult(f"field q={q} n={n} frobenius n", f.frobenius(g, n) == g, {})
        yield CheckResult(f"field q={q} n={n} inverse", f.mul(g, f.inv(g)) == 1, {})
        W = whole_space(f)
        yield CheckResult(f"whole space q={q} n={n}", weight_distribution(W).counts == (1,) + (0,) * n, {})
        S = span_fq(f, [1])
        yield CheckResult(f"line q={q} n={n}", intersect(S, zero_subspace(f)).k == 0 and scalar_mul(g, S).k == 1, {})


SUITES: dict[str, Callable[..., Iterator[CheckResult]]] = {
    "trivial": suite_trivial,
    "worked-examples": suite_worked_examples,
    "formulas": suite_formulas,
    "oracle": suite_oracle,
    "congruence": suite_congruence,
    "mu": suite_mu,
    "isometry": suite_isometry,
    "decomposition": suite_decomposition,
    "coprime": suite_coprime,
}
