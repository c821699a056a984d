"""Batch identity suites behind ``doubleforms verify``.

Every suite returns a list of :class:`CheckResult`.  A check either passes,
fails, or is skipped with a reason; nothing is dropped silently.  Results are
sorted by name so report order never depends on evaluation order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Optional

from .biform import BiForm, alt, basis, bianchi, is_symmetric, project, random_biform, transpose
from .chern_weil import (
    PiMultiple,
    euler_density_norm,
    euler_density_pfaffian,
    pontryagin_density_norm,
    pontryagin_density_sym,
    thorpe_report,
)
from .curvature import (
    constant_curvature,
    power,
    random_bianchi_form,
    random_curvature,
)
from .identities import (
    IdentityVerdict,
    verify_altalt,
    verify_bianchi_star,
    verify_corollary_star_bianchi,
    verify_forward_failure,
    verify_kernel_preserved,
    verify_lemma_identity,
)

__all__ = ["CheckResult", "SUITES", "run_suite", "all_bases", "bianchi_star_bidegrees"]

PASS, FAIL, SKIP = "pass", "fail", "skipped"


@dataclass(frozen=True)
class CheckResult:
    name: str
    anchor: str
    status: str
    instances: int = 0
    detail: str = ""
    witness: Optional[dict] = None
    expectation: str = "identity holds"

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "anchor": self.anchor,
            "status": self.status,
            "expectation": self.expectation,
            "instances": self.instances,
            "detail": self.detail,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _witness(v: IdentityVerdict) -> Optional[dict]:
    if v.witness is None:
        return None
    (I, J), a, b = v.witness
    return {"I": list(I), "J": list(J), "lhs": str(a), "rhs": str(b)}


def _batch(
    name: str,
    anchor: str,
    verdicts: Iterable[IdentityVerdict],
    expectation: str = "identity holds",
) -> CheckResult:
    count = 0
    last = ""
    for v in verdicts:
        count += 1
        if not v.holds:
            return CheckResult(name, anchor, FAIL, count, v.detail, _witness(v), expectation)
        last = v.detail
    return CheckResult(name, anchor, PASS, count, last if count == 1 else "", expectation=expectation)


def _bool_check(name: str, anchor: str, results: Iterable[tuple[bool, str]]) -> CheckResult:
    count = 0
    for ok, detail in results:
        count += 1
        if not ok:
            return CheckResult(name, anchor, FAIL, count, detail)
    return CheckResult(name, anchor, PASS, count)


def all_bases(bidegree: tuple[int, int], n: int) -> Iterable[BiForm]:
    p, q = bidegree
    for I in combinations(range(1, n + 1), p):
        for J in combinations(range(1, n + 1), q):
            yield basis(I, J, (n, n))


def bianchi_star_bidegrees(n: int, max_total: int = 6) -> list[tuple[int, int]]:
    """Admissible (p, q): q >= 1, p + 1 <= n, q <= n, p + q <= max_total."""
    return [
        (p, q)
        for p in range(0, n)
        for q in range(1, n + 1)
        if p + q <= max_total
    ]


ANCHOR_LEMMA = "Lemma: alternation over p+1 slots equals scaled Bianchi operator"
ANCHOR_REVERSE = "b(T) = 0 implies vanishing complete alternation"
ANCHOR_BSTAR = "Proposition: t*b = (-1)^(p+q-1) b*t"
ANCHOR_COR = "Corollary: *R^k satisfies the Bianchi identity"
ANCHOR_KERNEL = "star preserves the Bianchi kernel on curvature structures"
ANCHOR_ALTALT = "Proposition: T_[i1..i4p] = T_[i1..i4p-1]i4p on C^2p"
ANCHOR_POWERS = "R^p satisfies both the Bianchi identity and vanishing alternation"
ANCHOR_P1 = "p = 1: vanishing alternation iff Bianchi identity on curvature structures"
ANCHOR_CE = "Proposition: symmetric T with T_[1..8] = 0 but T_[1..5]678 != 0"
ANCHOR_PONT = "Pontryagin density: symmetric polynomial = self-dual norm formula"
ANCHOR_EULER = "Euler density: Pfaffian = four-way norm formula"
ANCHOR_COMBO = "norm identities for binom(2k,k) e +/- p_k"
ANCHOR_TRANSPOSE = "transpose(T^+_-) = T^-_+ for symmetric T"
ANCHOR_GB = "Gauss-Bonnet on the round S^4: chi = 2, p_1 = 0"


def _lemma_suite(n: int, rng: random.Random, count: int) -> list[CheckResult]:
    out = []
    if n <= 4:
        for p in range(0, n):
            for q in range(1, n + 1):
                if p + q > 4:
                    continue
                out.append(
                    _batch(
                        f"lemma/exhaustive/n={n}/p={p}/q={q}",
                        ANCHOR_LEMMA,
                        (verify_lemma_identity(b) for b in all_bases((p, q), n)),
                    )
                )
    shapes = [(p, q) for p in range(0, n) for q in range(1, n + 1) if p + q <= min(n + 1, 5)]
    per_shape: dict[tuple[int, int], list[BiForm]] = {}
    for i in range(count):
        p, q = shapes[i % len(shapes)]
        T = random_biform(rng, (p, q), (n, n), terms=rng.randint(1, 6))
        per_shape.setdefault((p, q), []).append(T)
    for (p, q), forms in per_shape.items():
        out.append(
            _batch(
                f"lemma/random/n={n}/p={p}/q={q}",
                ANCHOR_LEMMA,
                (verify_lemma_identity(T) for T in forms),
            )
        )

    def reverse():
        # build kernel elements of b, then alternation over all slots must vanish
        for i in range(count):
            T = random_bianchi_form(rng, n, terms=2)
            yield bianchi(T).is_zero() and alt(T).is_zero(), f"sample {i}"

    name = f"lemma/reverse-implication/n={n}"
    if n < 4:
        out.append(CheckResult(name, ANCHOR_REVERSE, SKIP, detail="needs n >= 4"))
    else:
        out.append(_bool_check(name, ANCHOR_REVERSE, reverse()))
    return out


def _bianchi_star_suite(n: int, rng: random.Random, count: int) -> list[CheckResult]:
    out = []
    for p, q in bianchi_star_bidegrees(n):
        if n <= 4:
            source = all_bases((p, q), n)
            label = "exhaustive"
        else:
            source = (random_biform(rng, (p, q), (n, n), terms=rng.randint(1, 4)) for _ in range(count))
            label = "random"
        out.append(
            _batch(
                f"bianchi-star/{label}/n={n}/p={p}/q={q}",
                ANCHOR_BSTAR,
                (verify_bianchi_star(T) for T in source),
            )
        )
    if n >= 3:
        kernel = (verify_kernel_preserved(random_bianchi_form(rng, n, 2)) for _ in range(count))
        out.append(_batch(f"bianchi-star/kernel/n={n}", ANCHOR_KERNEL, kernel))
    else:
        out.append(CheckResult(f"bianchi-star/kernel/n={n}", ANCHOR_KERNEL, SKIP, detail="needs n >= 3"))
    if n % 4 == 0:
        k = n // 4
        samples = count if k == 1 else min(count, 3)

        def corollary():
            yield verify_corollary_star_bianchi(constant_curvature(n, 1), k)
            for i in range(samples):
                R = random_curvature(rng.randrange(2**31), n, n, k, want_bianchi=True)
                yield verify_corollary_star_bianchi(R, k)

        out.append(_batch(f"bianchi-star/corollary/n={n}/k={k}", ANCHOR_COR, corollary()))
    else:
        out.append(
            CheckResult(
                f"bianchi-star/corollary/n={n}", ANCHOR_COR, SKIP, detail="dimension is not 4k"
            )
        )
    return out


def _altalt_suite(n: int, rng: random.Random, count: int) -> list[CheckResult]:
    out = []
    for p in (1, 2):
        name = f"altalt/symmetric/n={n}/p={p}"
        if 4 * p > n:
            out.append(CheckResult(name, ANCHOR_ALTALT, SKIP, detail=f"needs n >= {4 * p}"))
            continue
        samples = count if p == 1 else min(count, 5)

        def sym(p=p, samples=samples):
            for _ in range(samples):
                S = random_biform(rng, (2 * p, 2 * p), (n, n), terms=None if p == 1 else 12)
                yield verify_altalt(S + transpose(S))

        out.append(_batch(name, ANCHOR_ALTALT, sym()))

    def powers():
        for i in range(min(count, 5)):
            R = random_bianchi_form(rng, n, terms=3)
            for p in (1, 2):
                if 4 * p > n:
                    continue
                Rp = power(R, p)
                yield bianchi(Rp).is_zero() and alt(Rp).is_zero(), f"sample {i}, p = {p}"

    if n >= 4:
        out.append(_bool_check(f"altalt/curvature-powers/n={n}", ANCHOR_POWERS, powers()))

        def p1_equivalence():
            for i in range(count):
                if i % 2:
                    T = random_bianchi_form(rng, n, terms=2)
                else:
                    S = random_biform(rng, (2, 2), (n, n), terms=rng.randint(1, 8))
                    T = S + transpose(S)
                yield alt(T).is_zero() == bianchi(T).is_zero(), f"sample {i}"

        out.append(_bool_check(f"altalt/p1-equivalence/n={n}", ANCHOR_P1, p1_equivalence()))
    else:
        for part, anchor in (("curvature-powers", ANCHOR_POWERS), ("p1-equivalence", ANCHOR_P1)):
            out.append(CheckResult(f"altalt/{part}/n={n}", anchor, SKIP, detail="needs n >= 4"))
    return out


def _counterexample_suite(n: int, rng: random.Random, count: int) -> list[CheckResult]:
    name = f"counterexample/n={n}"
    expectation = "exhibit: alt(T) = 0 and b(T) != 0"
    if n < 8:
        return [CheckResult(name, ANCHOR_CE, SKIP, detail="needs n >= 8", expectation=expectation)]
    return [_batch(name, ANCHOR_CE, [verify_forward_failure(n)], expectation)]


def _chern_weil_suite(n: int, rng: random.Random, count: int) -> list[CheckResult]:
    if n % 4:
        reason = "needs base dimension 4k"
        return [
            CheckResult(f"chern-weil-cross/{part}/n={n}", a, SKIP, detail=reason)
            for part, a in (
                ("pontryagin", ANCHOR_PONT),
                ("euler", ANCHOR_EULER),
                ("thorpe-identities", ANCHOR_COMBO),
                ("transpose", ANCHOR_TRANSPOSE),
            )
        ]
    k = n // 4
    samples = count if k == 1 else min(count, 10)
    curvatures = []
    for i in range(samples):
        seed = rng.randrange(2**31)
        curvatures.append(random_curvature(seed, n, n, k, want_pair_symmetry=bool(i % 2)))
    out = [
        _bool_check(
            f"chern-weil-cross/pontryagin/n={n}",
            ANCHOR_PONT,
            (
                (a == b, f"{a.coefficient} vs {b.coefficient}")
                for a, b in ((pontryagin_density_sym(R), pontryagin_density_norm(R)) for R in curvatures)
            ),
        ),
        _bool_check(
            f"chern-weil-cross/euler/n={n}",
            ANCHOR_EULER,
            (
                (a == b, f"{a.coefficient} vs {b.coefficient}")
                for a, b in ((euler_density_pfaffian(R), euler_density_norm(R)) for R in curvatures)
            ),
        ),
    ]

    def combos():
        for R in curvatures:
            try:
                thorpe_report(R)
            except AssertionError as exc:
                yield False, str(exc)
            else:
                yield True, ""

    out.append(_bool_check(f"chern-weil-cross/thorpe-identities/n={n}", ANCHOR_COMBO, combos()))

    def transposes():
        for R in curvatures:
            if not is_symmetric(R.form):
                continue
            Rk = power(R, k)
            yield transpose(project(Rk, "+", "-")) == project(Rk, "-", "+"), ""

    out.append(_bool_check(f"chern-weil-cross/transpose/n={n}", ANCHOR_TRANSPOSE, transposes()))
    if n == 4:

        def gauss_bonnet():
            R = constant_curvature(4, 1)
            rep = thorpe_report(R, cross_check=True)
            vol = PiMultiple(Fraction(8, 3), 2)
            chi = rep.euler.integrate(vol)
            p1 = rep.pontryagin.integrate(vol)
            ok = chi == PiMultiple(Fraction(2), 0) and p1.rational == 0
            yield ok, f"chi = {chi}, p1 = {p1}"

        out.append(_bool_check("chern-weil-cross/gauss-bonnet/n=4", ANCHOR_GB, gauss_bonnet()))
    return out


SUITES: dict[str, Callable[[int, random.Random, int], list[CheckResult]]] = {
    "lemma": _lemma_suite,
    "bianchi-star": _bianchi_star_suite,
    "altalt": _altalt_suite,
    "counterexample": _counterexample_suite,
    "chern-weil-cross": _chern_weil_suite,
}


def run_suite(suite: str, n: int, seed: int = 0, count: int = 25) -> list[CheckResult]:
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {sorted(SUITES) + ['all']}")
    names = sorted(SUITES) if suite == "all" else [suite]
    results: list[CheckResult] = []
    for name in names:
        # one stream per suite so running a suite alone reproduces its part of "all"
        rng = random.Random(f"{seed}/{name}/{n}")
        results.extend(SUITES[name](n, rng, count))
    return sorted(results, key=lambda r: r.name)
