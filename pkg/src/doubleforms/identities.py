"""Verifiers for the Bianchi-operator identities on double forms.

Each verifier returns an :class:`IdentityVerdict`.  ``holds`` is True when the
object behaves as the identity asserts; for the counterexample it means the
documented failure of the naive equivalence is exhibited.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Optional

from .biform import BiForm, Key, alt, alt_slots, bianchi, is_symmetric, star, transpose
from .curvature import CurvatureTensor, power, thorpe_counterexample
from .exterior import sort_sign

__all__ = [
    "IdentityVerdict",
    "PreconditionError",
    "brute_alt_first",
    "verify_lemma_identity",
    "verify_forward_failure",
    "verify_altalt",
    "verify_bianchi_star",
    "verify_kernel_preserved",
    "verify_corollary_star_bianchi",
    "COUNTEREXAMPLE_KEY",
]

COUNTEREXAMPLE_KEY: Key = ((1, 2, 3, 4, 5), (6, 7, 8))


class PreconditionError(ValueError):
    """The input does not satisfy the hypotheses of the identity."""


@dataclass(frozen=True)
class IdentityVerdict:
    name: str
    holds: bool
    witness: Optional[tuple[Key, Fraction, Fraction]] = None
    detail: str = ""

    def __post_init__(self) -> None:
        if (self.witness is None) != self.holds:
            raise ValueError("a witness is required exactly when the identity fails")

    def __bool__(self) -> bool:
        return self.holds


def _compare(name: str, lhs: BiForm, rhs: BiForm, detail: str = "") -> IdentityVerdict:
    if lhs.bidegree != rhs.bidegree:
        raise ValueError(f"{name}: comparing forms of bidegree {lhs.bidegree} and {rhs.bidegree}")
    if lhs == rhs:
        return IdentityVerdict(name, True, detail=detail)
    a, b = lhs.as_dict(), rhs.as_dict()
    key = min(k for k in set(a) | set(b) if a.get(k, 0) != b.get(k, 0))
    return IdentityVerdict(name, False, (key, a.get(key, Fraction(0)), b.get(key, Fraction(0))), detail)


def brute_alt_first(form: BiForm, m: int, key: Key) -> Fraction:
    """``T_{[K] L}`` for ``key = (K, L)`` by summing over all of S_m."""
    K, L = key
    total = Fraction(0)
    for perm in permutations(range(m)):
        sign, _ = sort_sign(perm)
        total += sign * form.evaluate(tuple(K[i] for i in perm) + L)
    return total / math.factorial(m)


def verify_lemma_identity(form: BiForm) -> IdentityVerdict:
    """Alternation over the first p+1 slots equals ``(-1)^{p+1}/(p+1)`` times ``b(T)``.

    The left side is a brute-force sum over S_{p+1}, evaluated on every
    canonical component.
    """
    name = "lemma: alternation over p+1 slots vs Bianchi operator"
    p, q = form.bidegree
    n = form.dims[0]
    if q < 1:
        raise PreconditionError("needs q >= 1")
    rhs = bianchi(form).scale(Fraction((-1) ** (p + 1), p + 1))
    lhs: dict[Key, Fraction] = {}
    for K in combinations(range(1, n + 1), p + 1):
        for L in combinations(range(1, n + 1), q - 1):
            v = brute_alt_first(form, p + 1, (K, L))
            if v:
                lhs[K, L] = v
    lhs_form = BiForm((p + 1, q - 1), form.dims, lhs, _trusted=True)
    return _compare(name, lhs_form, rhs, f"(p, q) = {(p, q)}, n = {n}")


def verify_forward_failure(n: int = 8, form: Optional[BiForm] = None) -> IdentityVerdict:
    """Exhibit a symmetric (4,4) form with zero full alternation but nonzero Bianchi image.

    ``holds`` is True when the exhibit behaves as claimed: alt(T) = 0 on every
    component while b(T) is nonzero at ((1,2,3,4,5), (6,7,8)).
    """
    name = "counterexample: alt(T) = 0 but b(T) != 0"
    T = thorpe_counterexample(n) if form is None else form
    if T.bidegree != (4, 4) or not is_symmetric(T):
        raise PreconditionError("counterexample must be a symmetric (4,4) double form")
    full = alt(T)
    b = bianchi(T)
    partial = alt_slots(T, 5).as_dict().get(COUNTEREXAMPLE_KEY, Fraction(0))
    bval = b.as_dict().get(COUNTEREXAMPLE_KEY, Fraction(0))
    detail = (
        f"alt(T) has {len(full)} nonzero components; "
        f"T_[12345]678 = {partial}; b(T) at {COUNTEREXAMPLE_KEY} = {bval}"
    )
    if not full.is_zero():
        key, v = next(iter(full.items()))
        return IdentityVerdict(name, False, (key, v, Fraction(0)), detail)
    if b.is_zero() or bval == 0:
        return IdentityVerdict(name, False, (COUNTEREXAMPLE_KEY, bval, Fraction(0)), detail)
    return IdentityVerdict(name, True, detail=detail)


def verify_altalt(form: BiForm) -> IdentityVerdict:
    """For symmetric T in C^{2p}: full alternation equals alternation over the first 4p-1 slots.

    Components of the right side whose last index repeats one of the first
    4p-1 must vanish; the rest must match the full alternation reordered.
    """
    name = "full alternation vs alternation over first 4p-1 slots"
    if not is_symmetric(form):
        raise PreconditionError("needs a transpose-fixed double form")
    r = form.bidegree[0]
    if r % 2:
        raise PreconditionError(f"needs even degree 2p, got {r}")
    m = 2 * r
    n = form.dims[0]
    if m > n:
        raise PreconditionError(f"alternation over {m} slots needs dimension >= {m}, got {n}")
    full = alt(form)
    rhs = alt_slots(form, m - 1)
    expected: dict[Key, Fraction] = {}
    for (K, ()), v in full.items():
        for pos, last in enumerate(K):
            rest = K[:pos] + K[pos + 1:]
            # moving `last` from position pos to the end
            sign = -1 if (m - 1 - pos) % 2 else 1
            expected[rest, (last,)] = sign * v
    lhs = BiForm((m - 1, 1), form.dims, expected, _trusted=True)
    return _compare(name, lhs, rhs, f"p = {r // 2}, n = {n}")


def _bianchi_star_sides(form: BiForm) -> tuple[BiForm, BiForm, int]:
    p, q = form.bidegree
    n = form.dims[0]
    if form.dims[1] != n:
        raise PreconditionError(f"needs a double form, got dims {form.dims}")
    if q < 1 or p + 1 > n:
        raise PreconditionError(f"inadmissible bidegree {(p, q)} in dimension {n}")
    lhs = transpose(star(bianchi(form), "both"))
    rhs = bianchi(star(transpose(form), "both"))
    return lhs, rhs, (-1) ** (p + q - 1)


def verify_bianchi_star(form: BiForm) -> IdentityVerdict:
    """``t * b = (-1)^{p+q-1} b * t`` on D^{p,q} -> D^{n-q+1, n-p-1}."""
    lhs, rhs, sign = _bianchi_star_sides(form)
    p, q = form.bidegree
    return _compare(
        "Bianchi-star: t*b = (-1)^(p+q-1) b*t",
        lhs,
        rhs.scale(sign),
        f"(p, q) = {(p, q)}, n = {form.dims[0]}",
    )


def verify_kernel_preserved(form: BiForm) -> IdentityVerdict:
    """For symmetric T with b(T) = 0, also b(*T) = 0 (checked directly)."""
    name = "star preserves the Bianchi kernel on symmetric forms"
    if not is_symmetric(form):
        raise PreconditionError("needs a transpose-fixed double form")
    if not bianchi(form).is_zero():
        raise PreconditionError("needs b(T) = 0")
    image = bianchi(star(form, "both"))
    return _compare(name, image, BiForm.zero(image.bidegree, image.dims))


def verify_corollary_star_bianchi(R: CurvatureTensor, k: int) -> IdentityVerdict:
    """``b(*(R^k)) = 0`` for a pair-symmetric first-Bianchi curvature tensor."""
    name = "corollary: *R^k satisfies the Bianchi identity"
    if not isinstance(R, CurvatureTensor):
        raise PreconditionError("needs a tangent curvature tensor")
    if not (R.pair_symmetric and R.first_bianchi):
        raise PreconditionError(
            f"needs pair symmetry and first Bianchi; got pair_symmetric={R.pair_symmetric}, "
            f"first_bianchi={R.first_bianchi}"
        )
    if R.base_dim != 4 * k:
        raise PreconditionError(f"dimension {R.base_dim} is not 4k = {4 * k}")
    image = bianchi(star(power(R, k), "both"))
    return _compare(name, image, BiForm.zero(image.bidegree, image.dims), f"k = {k}")
