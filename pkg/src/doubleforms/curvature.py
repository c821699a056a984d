"""Algebraic curvature data as (2,2)-bi-forms in orthonormal frames.

A bundle curvature ``R`` over a base of dimension 4k with fiber rank l is
stored as the bi-form with coefficients ``R_{ijab} = R(e_i, e_j, s_a, s_b)``.
Because frames are orthonormal, ``R^a_b = R_{ab}`` and no index gymnastics are
needed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Union

from .biform import BiForm, basis, bianchi, is_symmetric, random_biform, transpose, wedge

__all__ = [
    "BundleCurvature",
    "CurvatureTensor",
    "from_components",
    "metric_form",
    "constant_curvature",
    "kulkarni_nomizu",
    "random_curvature",
    "random_symmetric_11",
    "random_bianchi_form",
    "power",
    "thorpe_counterexample",
]


@dataclass(frozen=True)
class BundleCurvature:
    """Curvature of a metric connection on a rank-l bundle over a 4k-dimensional base."""

    form: BiForm
    k: int

    def __post_init__(self) -> None:
        if self.form.bidegree != (2, 2):
            raise ValueError(f"curvature must be a (2,2)-bi-form, got {self.form.bidegree}")
        if self.k < 1:
            raise ValueError(f"k must be positive, got {self.k}")
        nv, l = self.form.dims
        if nv != 4 * self.k:
            raise ValueError(f"base dimension {nv} is not 4k = {4 * self.k}")
        if l < 2 * self.k:
            raise ValueError(f"fiber rank {l} is below 2k = {2 * self.k}")

    @property
    def base_dim(self) -> int:
        return self.form.dims[0]

    @property
    def fiber_rank(self) -> int:
        return self.form.dims[1]


@dataclass(frozen=True)
class CurvatureTensor(BundleCurvature):
    """Curvature of the tangent bundle itself (l = nV).

    ``pair_symmetric`` and ``first_bianchi`` are recomputed from the form on
    construction.
    """

    pair_symmetric: bool = field(init=False)
    first_bianchi: bool = field(init=False)

    def __post_init__(self) -> None:
        super().__post_init__()
        nv, l = self.form.dims
        if nv != l:
            raise ValueError(f"tangent curvature needs equal dims, got {self.form.dims}")
        object.__setattr__(self, "pair_symmetric", is_symmetric(self.form))
        object.__setattr__(self, "first_bianchi", bianchi(self.form).is_zero())

    @classmethod
    def of(cls, form: BiForm) -> "CurvatureTensor":
        n = form.dims[0]
        if n % 4:
            raise ValueError(f"dimension {n} is not a multiple of 4")
        return cls(form, n // 4)


def from_components(
    entries: Iterable[tuple[int, int, int, int, Union[int, Fraction, str]]],
    nV: int,
    l: int,
    k: int,
) -> BundleCurvature:
    """Curvature from ``(i, j, a, b, value)`` quadruples (plus value).

    Entries are folded into canonical keys using the skew symmetry in (i, j) and
    in (a, b); two entries landing on the same key must agree.
    """
    items = [((i, j), (a, b), v) for i, j, a, b, v in entries]
    form = BiForm.from_raw((2, 2), (nV, l), items)
    if nV == l:
        return CurvatureTensor(form, k)
    return BundleCurvature(form, k)


def metric_form(n: int) -> BiForm:
    """The metric ``g = sum_i e^i (x) e^i`` as a (1,1) double form."""
    return BiForm((1, 1), (n, n), {((i,), (i,)): 1 for i in range(1, n + 1)}, _trusted=True)


def constant_curvature(n: int, kappa: Union[int, Fraction] = 1) -> CurvatureTensor:
    """Model space of sectional curvature ``kappa``: ``(kappa/2) g ^ g``."""
    if n % 4 or n <= 0:
        raise ValueError(f"dimension {n} is not a positive multiple of 4")
    g = metric_form(n)
    return CurvatureTensor(wedge(g, g).scale(Fraction(kappa) / 2), n // 4)


def kulkarni_nomizu(h1: BiForm, h2: BiForm) -> CurvatureTensor:
    """Wedge of two symmetric (1,1) double forms."""
    for h in (h1, h2):
        if h.bidegree != (1, 1) or not is_symmetric(h):
            raise ValueError("Kulkarni-Nomizu factors must be symmetric (1,1) double forms")
    if h1.dims != h2.dims:
        raise ValueError(f"dimension mismatch: {h1.dims} vs {h2.dims}")
    product = wedge(h1, h2)
    if not is_symmetric(product):
        product = (product + transpose(product)).scale(Fraction(1, 2))
    return CurvatureTensor.of(product)


def random_symmetric_11(rng: random.Random, n: int, max_num: int = 3) -> BiForm:
    entries = {}
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            v = Fraction(rng.randint(-max_num, max_num), rng.randint(1, 2))
            entries[(i,), (j,)] = v
            entries[(j,), (i,)] = v
    return BiForm((1, 1), (n, n), entries, _trusted=True)


def random_bianchi_form(rng: random.Random, n: int, terms: int = 3) -> BiForm:
    """Random rational combination of Kulkarni-Nomizu products in any dimension."""
    form = BiForm.zero((2, 2), (n, n))
    for _ in range(terms):
        c = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3))
        h1 = random_symmetric_11(rng, n)
        h2 = random_symmetric_11(rng, n)
        form = form + wedge(h1, h2).scale(c)
    return form


def random_curvature(
    seed: int,
    n: int,
    l: int,
    k: int,
    want_pair_symmetry: bool = False,
    want_bianchi: bool = False,
    kn_terms: int = 3,
) -> BundleCurvature:
    """Seeded random curvature.

    With ``want_bianchi`` the result is a random rational combination of
    Kulkarni-Nomizu products (tangent case only), which is automatically pair
    symmetric.  With only ``want_pair_symmetry`` a random form is symmetrized
    as ``S + S^t``.
    """
    if l < 2 * k:
        raise ValueError(f"fiber rank {l} is below 2k = {2 * k}")
    rng = random.Random(seed)
    if want_bianchi:
        if l != n:
            raise ValueError("first-Bianchi curvature requires l == n")
        form = random_bianchi_form(rng, n, kn_terms)
    else:
        form = random_biform(rng, (2, 2), (n, l))
        if want_pair_symmetry:
            if l != n:
                raise ValueError("pair symmetry requires l == n")
            form = form + transpose(form)
    if l == n:
        out = CurvatureTensor(form, k)
        if want_pair_symmetry and not out.pair_symmetric:
            raise AssertionError("symmetrized curvature is not transpose-fixed")
        if want_bianchi and not out.first_bianchi:
            raise AssertionError("Kulkarni-Nomizu combination fails the Bianchi identity")
        return out
    return BundleCurvature(form, k)


def _form_of(R: Union[BundleCurvature, BiForm]) -> BiForm:
    return R.form if isinstance(R, BundleCurvature) else R


def power(R: Union[BundleCurvature, BiForm], p: int) -> BiForm:
    """``R^p = R ^ ... ^ R`` (p factors), a (2p, 2p)-bi-form."""
    form = _form_of(R)
    if p < 1:
        raise ValueError(f"power must be positive, got {p}")
    nv, l = form.dims
    if 2 * p > nv or 2 * p > l:
        raise ValueError(f"R^{p} has degree {2 * p} beyond dims {form.dims}")
    out = form
    for _ in range(p - 1):
        out = wedge(out, form)
    return out


def thorpe_counterexample(n: int = 8) -> BiForm:
    """Symmetric (4,4) double form with vanishing full alternation but nonzero Bianchi image.

    Generated by ``T_{12345678} = T_{12374568} = 1`` and completed by the
    transpose symmetry; every other component is zero.
    """
    if n < 8:
        raise ValueError(f"the construction needs dimension >= 8, got {n}")
    dims = (n, n)
    T = basis((1, 2, 3, 4), (5, 6, 7, 8), dims) + basis((1, 2, 3, 7), (4, 5, 6, 8), dims)
    return T + transpose(T)
