"""Pointwise Chern-Weil densities and Thorpe-type inequalities.

Densities are returned as :class:`Density`, an exact rational multiple of
``(2 pi)^{-pi_power}`` times the base volume element.  Each density has two
independent routes:

* Pontryagin: elementary symmetric polynomial of the curvature matrix
  (``pontryagin_density_sym``) vs. self-dual norms of ``R^k``
  (``pontryagin_density_norm``).
* Euler: Pfaffian of the curvature matrix (``euler_density_pfaffian``) vs.
  four-way self-dual norms of ``R^k`` (``euler_density_norm``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Any, Optional, Sequence

from .biform import BiForm, norm_sq, project, top_coefficient
from .curvature import BundleCurvature, power

__all__ = [
    "Density",
    "PiMultiple",
    "ThorpeReport",
    "DensityMismatch",
    "pfaffian",
    "leibniz_determinant",
    "curvature_matrix",
    "pontryagin_density_sym",
    "pontryagin_density_norm",
    "pontryagin_norm_refinement",
    "euler_density_pfaffian",
    "euler_density_norm",
    "split_norms",
    "thorpe_report",
]


class DensityMismatch(AssertionError):
    """Two routes to the same characteristic density disagree."""


@dataclass(frozen=True)
class PiMultiple:
    """The real number ``rational * pi**pi_exponent``."""

    rational: Fraction
    pi_exponent: int = 0

    @classmethod
    def parse(cls, text: str) -> "PiMultiple":
        """Parse ``"8/3*pi^2"``, ``"pi^2"``, ``"3"`` or ``"1/2*pi"``."""
        raw = text.replace(" ", "").lower()
        if not raw:
            raise ValueError("empty volume")
        coef, _, tail = raw.partition("*")
        if coef.startswith("pi"):
            coef, tail = "1", raw
        if tail:
            if not tail.startswith("pi"):
                raise ValueError(f"cannot parse {text!r}: expected rational*pi^m")
            exp = tail[2:]
            if not exp:
                m = 1
            elif exp.startswith("^") or exp.startswith("**"):
                m = int(exp.lstrip("^*"))
            else:
                raise ValueError(f"cannot parse exponent in {text!r}")
        else:
            m = 0
        return cls(Fraction(coef), m)

    def __float__(self) -> float:
        return float(self.rational) * math.pi**self.pi_exponent

    def __str__(self) -> str:
        if self.pi_exponent == 0 or self.rational == 0:
            return str(self.rational)
        return f"{self.rational}*pi^{self.pi_exponent}"


@dataclass(frozen=True)
class Density:
    """``coefficient * (2 pi)^{-pi_power}`` times the volume element."""

    coefficient: Fraction
    pi_power: int

    def __add__(self, other: "Density") -> "Density":
        self._compatible(other)
        return Density(self.coefficient + other.coefficient, self.pi_power)

    def __sub__(self, other: "Density") -> "Density":
        self._compatible(other)
        return Density(self.coefficient - other.coefficient, self.pi_power)

    def __neg__(self) -> "Density":
        return Density(-self.coefficient, self.pi_power)

    def __rmul__(self, c) -> "Density":
        return Density(Fraction(c) * self.coefficient, self.pi_power)

    def _compatible(self, other: "Density") -> None:
        if self.pi_power != other.pi_power:
            raise ValueError(f"pi powers differ: {self.pi_power} vs {other.pi_power}")

    def sign(self) -> int:
        return (self.coefficient > 0) - (self.coefficient < 0)

    def __float__(self) -> float:
        return float(self.coefficient) / (2 * math.pi) ** self.pi_power

    def integrate(self, volume: PiMultiple) -> PiMultiple:
        """Integral of this constant density against ``volume``."""
        return PiMultiple(
            self.coefficient * volume.rational / 2**self.pi_power,
            volume.pi_exponent - self.pi_power,
        )


def _is_zero(x) -> bool:
    if isinstance(x, BiForm):
        return x.is_zero()
    return x == 0


def _validate_antisymmetric(matrix: Sequence[Sequence[Any]]) -> int:
    size = len(matrix)
    for row in matrix:
        if len(row) != size:
            raise ValueError("matrix is not square")
    for i in range(size):
        if not _is_zero(matrix[i][i]):
            raise ValueError(f"diagonal entry ({i + 1},{i + 1}) is nonzero")
        for j in range(i + 1, size):
            if matrix[i][j] != -matrix[j][i]:
                raise ValueError(f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) are not opposite")
    return size


def pfaffian(matrix: Sequence[Sequence[Any]], one: Any = Fraction(1)):
    """Pfaffian of an antisymmetric matrix with pairwise commuting entries.

    Entries may be exact scalars or even-degree forms.  The value equals
    ``(1 / (2^m m!)) sum_{sigma in S_2m} sgn(sigma) A_{s1 s2} ... A_{s(2m-1) s(2m)}``;
    it is evaluated by expansion along the first remaining row, i.e. as a
    signed sum over perfect matchings.  ``one`` is the empty product; an
    identically vanishing expansion returns the integer 0.
    """
    size = _validate_antisymmetric(matrix)
    if size % 2:
        raise ValueError(f"Pfaffian needs an even-sized matrix, got {size}")

    @lru_cache(maxsize=None)
    def expand(rest: tuple[int, ...]):
        if not rest:
            return one
        first, tail = rest[0], rest[1:]
        total = None
        for pos, j in enumerate(tail):
            entry = matrix[first][j]
            if _is_zero(entry):
                continue
            sub = expand(tail[:pos] + tail[pos + 1:])
            if sub is None:
                continue
            term = entry * sub
            if pos % 2:
                term = -term
            total = term if total is None else total + term
        return total

    result = expand(tuple(range(size)))
    return 0 if result is None else result


def leibniz_determinant(matrix: Sequence[Sequence[Any]], one: Any = Fraction(1)):
    """Determinant ``sum_sigma sgn(sigma) A_{1 s(1)} ... A_{m s(m)}`` for commuting entries.

    Permutations are accumulated row by row, grouped by the set of columns
    used so far; the sign is tracked from the inversions each new column adds.
    """
    size = len(matrix)
    layer: dict[frozenset, Any] = {frozenset(): one}
    for row in range(size):
        nxt: dict[frozenset, Any] = {}
        for used, partial in layer.items():
            for col in range(size):
                if col in used:
                    continue
                entry = matrix[row][col]
                if _is_zero(entry):
                    continue
                term = partial * entry
                if sum(1 for c in used if c > col) % 2:
                    term = -term
                key = used | {col}
                nxt[key] = term if key not in nxt else nxt[key] + term
        layer = nxt
    return layer.get(frozenset(range(size)), 0)


def curvature_matrix(R: BundleCurvature) -> list[list[BiForm]]:
    """The l x l matrix of base 2-forms ``R_{ab} = sum_{i<j} R_{ijab} e^{ij}``."""
    nv, l = R.form.dims
    dims = R.form.dims
    buckets: dict[tuple[int, int], dict] = {}
    for (I, (a, b)), v in R.form.items():
        buckets.setdefault((a, b), {})[I, ()] = v
        buckets.setdefault((b, a), {})[I, ()] = -v
    return [
        [BiForm((2, 0), dims, buckets.get((a, b), {}), _trusted=True) for b in range(1, l + 1)]
        for a in range(1, l + 1)
    ]


def _top(form) -> Fraction:
    if isinstance(form, BiForm):
        return top_coefficient(form) if form.bidegree[0] else Fraction(0)
    return Fraction(form)


def _unit(R: BundleCurvature) -> BiForm:
    return BiForm((0, 0), R.form.dims, {((), ()): 1}, _trusted=True)


def _check_k(R: BundleCurvature, k: Optional[int]) -> int:
    if k is None:
        k = R.k
    if R.base_dim != 4 * k:
        raise ValueError(f"base dimension {R.base_dim} is not 4k = {4 * k}")
    if R.fiber_rank < 2 * k:
        raise ValueError(f"fiber rank {R.fiber_rank} is below 2k = {2 * k}")
    return k


def pontryagin_density_sym(R: BundleCurvature, k: Optional[int] = None) -> Density:
    """k-th Pontryagin density via the (2k)-th elementary symmetric polynomial.

    ``sum_{a_1 < ... < a_2k} sum_{sigma in S_2k} sgn(sigma) R^{a_1}_{a_sigma(1)} ^ ... ``
    """
    k = _check_k(R, k)
    mat = curvature_matrix(R)
    one = _unit(R)
    total = Fraction(0)
    for rows in combinations(range(R.fiber_rank), 2 * k):
        minor = [[mat[a][b] for b in rows] for a in rows]
        total += _top(leibniz_determinant(minor, one))
    return Density(total, 2 * k)


def split_norms(Rk: BiForm, first: bool = True, second: bool = True) -> dict[str, Fraction]:
    """Squared norms of the self-dual / anti-self-dual pieces.

    Keys are ``'++', '+-', '-+', '--'`` for a two-sided split and ``'+', '-'``
    when only the base factor is split.
    """
    if first and second:
        return {
            a + b: norm_sq(project(Rk, a, b)) for a in "+-" for b in "+-"
        }
    if first:
        return {a: norm_sq(project(Rk, a, None)) for a in "+-"}
    raise ValueError("at least the base factor must be split")


def pontryagin_density_norm(R: BundleCurvature, k: Optional[int] = None) -> Density:
    """``(|(R^k)^+|^2 - |(R^k)^-|^2) / (k!)^2`` with the base factor split only."""
    k = _check_k(R, k)
    norms = split_norms(power(R, k), first=True, second=False)
    return Density((norms["+"] - norms["-"]) / math.factorial(k) ** 2, 2 * k)


def pontryagin_norm_refinement(norms: dict[str, Fraction], k: int) -> Density:
    """Rank-4k form: ``(|++|^2 + |+-|^2 - |-+|^2 - |--|^2) / (k!)^2``."""
    value = norms["++"] + norms["+-"] - norms["-+"] - norms["--"]
    return Density(value / math.factorial(k) ** 2, 2 * k)


def _check_euler(R: BundleCurvature, k: Optional[int]) -> int:
    k = _check_k(R, k)
    if R.fiber_rank != 4 * k:
        raise ValueError(f"Euler density needs fiber rank 4k = {4 * k}, got {R.fiber_rank}")
    return k


def euler_density_pfaffian(R: BundleCurvature, k: Optional[int] = None) -> Density:
    """Euler density as the Pfaffian of the curvature matrix.

    ``(1 / (2^2k (2k)!)) sum_{sigma in S_4k} sgn(sigma) R_{s1 s2} ^ ... ^ R_{s(4k-1) s(4k)}``
    is exactly the Pfaffian normalization for a 4k x 4k matrix.
    """
    k = _check_euler(R, k)
    pf = pfaffian(curvature_matrix(R), _unit(R))
    return Density(_top(pf), 2 * k)


def euler_density_norm(R: BundleCurvature, k: Optional[int] = None) -> Density:
    """``(|++|^2 - |+-|^2 - |-+|^2 + |--|^2) / (2k)!`` on ``R^k``."""
    k = _check_euler(R, k)
    n = split_norms(power(R, k))
    value = n["++"] - n["+-"] - n["-+"] + n["--"]
    return Density(value / math.factorial(2 * k), 2 * k)


@dataclass(frozen=True)
class ThorpeReport:
    k: int
    norms: dict[str, Fraction]
    euler: Density
    pontryagin: Density
    combo_plus: Density
    combo_minus: Density
    vanish_minus_plus: bool
    vanish_plus_minus: bool
    ineq_plus_holds: bool
    ineq_minus_holds: bool
    ineq_abs_holds: bool

    @property
    def binom(self) -> int:
        return math.comb(2 * self.k, self.k)

    # the theorem only speaks when its vanishing hypothesis holds
    @property
    def plus_consistent(self) -> bool:
        return not self.vanish_minus_plus or self.ineq_plus_holds

    @property
    def minus_consistent(self) -> bool:
        return not self.vanish_plus_minus or self.ineq_minus_holds

    @property
    def abs_consistent(self) -> bool:
        return not (self.vanish_minus_plus and self.vanish_plus_minus) or self.ineq_abs_holds


def _require_equal(name: str, a: Density, b: Density) -> None:
    if a != b:
        raise DensityMismatch(f"{name}: {a.coefficient} != {b.coefficient}")


def thorpe_report(
    R: BundleCurvature, k: Optional[int] = None, cross_check: bool = False
) -> ThorpeReport:
    """Euler and Pontryagin densities of a rank-4k curvature with the Thorpe combinations.

    The two combination identities are re-derived from the norms and checked
    before returning.  ``cross_check`` additionally runs the polynomial
    (Pfaffian / symmetric function) routes and demands exact agreement.
    """
    k = _check_euler(R, k)
    norms = split_norms(power(R, k))
    euler = Density(
        (norms["++"] - norms["+-"] - norms["-+"] + norms["--"]) / math.factorial(2 * k), 2 * k
    )
    pont = pontryagin_norm_refinement(norms, k)
    _require_equal("Pontryagin base split vs four-way split", pont, pontryagin_density_norm(R, k))
    binom = math.comb(2 * k, k)
    combo_plus = binom * euler + pont
    combo_minus = binom * euler - pont
    scale = Fraction(2, math.factorial(k) ** 2)
    _require_equal(
        "binom*e + p_k", combo_plus, Density(scale * (norms["++"] - norms["-+"]), 2 * k)
    )
    _require_equal(
        "binom*e - p_k", combo_minus, Density(scale * (norms["--"] - norms["+-"]), 2 * k)
    )
    if cross_check:
        _require_equal("Euler Pfaffian vs norms", euler, euler_density_pfaffian(R, k))
        _require_equal("Pontryagin symmetric vs norms", pont, pontryagin_density_sym(R, k))
    binom_e = binom * euler.coefficient
    return ThorpeReport(
        k=k,
        norms=norms,
        euler=euler,
        pontryagin=pont,
        combo_plus=combo_plus,
        combo_minus=combo_minus,
        vanish_minus_plus=norms["-+"] == 0,
        vanish_plus_minus=norms["+-"] == 0,
        ineq_plus_holds=combo_plus.coefficient >= 0,
        ineq_minus_holds=combo_minus.coefficient >= 0,
        ineq_abs_holds=binom_e >= abs(pont.coefficient),
    )
