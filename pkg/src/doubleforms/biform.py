"""Sparse exact bi-forms: elements of Lambda^r V (x) Lambda^s W.

Coefficients are stored under canonical index pairs ``(I, J)`` and equal the
evaluation ``T(e_{i_1}, ..., e_{i_r}, e_{j_1}, ..., e_{j_s})`` on the
orthonormal basis (determinant convention).  With that convention the wedge of
basis elements is plain concatenation, ``e^I ^ e^K = e^{IK}``.

All arithmetic is on :class:`fractions.Fraction`; nothing here rounds.
"""

from __future__ import annotations

import math
import random
from collections import defaultdict
from fractions import Fraction
from itertools import combinations
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Optional, Union

from .exterior import complement_of, merge, sort_sign

__all__ = [
    "BiForm",
    "Key",
    "basis",
    "wedge",
    "star",
    "transpose",
    "inner",
    "norm_sq",
    "project",
    "alt",
    "alt_slots",
    "bianchi",
    "is_symmetric",
    "top_coefficient",
    "random_biform",
]

Key = tuple[tuple[int, ...], tuple[int, ...]]
ScalarLike = Union[int, Fraction, Rational]


def _as_scalar(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Rational)) and not isinstance(x, bool)


class BiForm:
    """An (r, s)-bi-form over dims (nV, nW), stored sparsely.

    Instances are immutable; every operation returns a new form.  Zero
    coefficients are never stored.
    """

    __slots__ = ("_bidegree", "_dims", "_entries")

    def __init__(
        self,
        bidegree: tuple[int, int],
        dims: tuple[int, int],
        entries: Optional[Mapping[Key, ScalarLike]] = None,
        *,
        _trusted: bool = False,
    ):
        r, s = (int(x) for x in bidegree)
        nv, nw = (int(x) for x in dims)
        if nv < 0 or nw < 0:
            raise ValueError(f"negative dimension in {dims}")
        if not (0 <= r <= nv and 0 <= s <= nw):
            raise ValueError(f"bidegree {(r, s)} does not fit dims {(nv, nw)}")
        self._bidegree = (r, s)
        self._dims = (nv, nw)
        if entries is None:
            self._entries: dict[Key, Fraction] = {}
        elif _trusted:
            self._entries = {k: v for k, v in entries.items() if v}
        else:
            clean: dict[Key, Fraction] = {}
            for (I, J), v in entries.items():
                I, J = tuple(I), tuple(J)
                self._check_key(I, J)
                v = _as_scalar(v)
                if v:
                    clean[I, J] = v
            self._entries = clean

    def _check_key(self, I: tuple[int, ...], J: tuple[int, ...]) -> None:
        r, s = self._bidegree
        nv, nw = self._dims
        if len(I) != r or len(J) != s:
            raise ValueError(f"key {(I, J)} has wrong bidegree for {(r, s)}")
        for idx, n in ((I, nv), (J, nw)):
            if any(not 1 <= i <= n for i in idx):
                raise ValueError(f"key {(I, J)} out of range for dims {self._dims}")
            if any(a >= b for a, b in zip(idx, idx[1:])):
                raise ValueError(f"key {(I, J)} is not canonical")

    @classmethod
    def from_raw(
        cls,
        bidegree: tuple[int, int],
        dims: tuple[int, int],
        items: Iterable[tuple[Iterable[int], Iterable[int], ScalarLike]],
    ) -> "BiForm":
        """Build from possibly non-canonical ``(I, J, value)`` triples.

        Signs of the sorting permutations are folded into the value.  The same
        canonical key given twice must agree after folding, otherwise
        ``ValueError`` is raised.
        """
        r, s = bidegree
        nv, nw = dims
        seen: dict[Key, Fraction] = {}
        for I, J, value in items:
            I, J = tuple(int(i) for i in I), tuple(int(j) for j in J)
            if len(I) != r or len(J) != s:
                raise ValueError(f"entry {(I, J)} has wrong bidegree for {(r, s)}")
            for idx, n in ((I, nv), (J, nw)):
                for i in idx:
                    if not 1 <= i <= n:
                        raise ValueError(f"index {i} out of range [1..{n}]")
            si, cI = sort_sign(I)
            sj, cJ = sort_sign(J)
            value = _as_scalar(value)
            if si * sj == 0:
                if value:
                    raise ValueError(f"nonzero value on repeated-index entry {(I, J)}")
                continue
            folded = si * sj * value
            key = (cI, cJ)
            if key in seen and seen[key] != folded:
                raise ValueError(
                    f"inconsistent duplicate for key {key}: {seen[key]} vs {folded}"
                )
            seen[key] = folded
        return cls(bidegree, dims, seen, _trusted=True)

    @classmethod
    def zero(cls, bidegree: tuple[int, int], dims: tuple[int, int]) -> "BiForm":
        return cls(bidegree, dims)

    @property
    def bidegree(self) -> tuple[int, int]:
        return self._bidegree

    @property
    def dims(self) -> tuple[int, int]:
        return self._dims

    def items(self) -> Iterator[tuple[Key, Fraction]]:
        return iter(self._entries.items())

    def keys(self):
        return self._entries.keys()

    def as_dict(self) -> dict[Key, Fraction]:
        return dict(self._entries)

    def coefficient(self, I: Iterable[int], J: Iterable[int] = ()) -> Fraction:
        """Coefficient on ``e^I (x) e^J``; non-canonical keys are sorted with sign."""
        si, cI = sort_sign(tuple(I))
        sj, cJ = sort_sign(tuple(J))
        if si * sj == 0:
            return Fraction(0)
        return si * sj * self._entries.get((cI, cJ), Fraction(0))

    def evaluate(self, args: Iterable[int]) -> Fraction:
        """Component ``T_{i_1 ... i_{r+s}}``: evaluation on basis vectors.

        The first r indices feed the V factor, the remaining s the W factor.
        """
        args = tuple(args)
        r, s = self._bidegree
        if len(args) != r + s:
            raise ValueError(f"expected {r + s} arguments, got {len(args)}")
        return self.coefficient(args[:r], args[r:])

    def is_zero(self) -> bool:
        return not self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __bool__(self) -> bool:
        return bool(self._entries)

    def _same_space(self, other: "BiForm") -> None:
        if self._bidegree != other._bidegree or self._dims != other._dims:
            raise ValueError(
                f"shape mismatch: {self._bidegree}/{self._dims} vs "
                f"{other._bidegree}/{other._dims}"
            )

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiForm):
            return NotImplemented
        return (
            self._bidegree == other._bidegree
            and self._dims == other._dims
            and self._entries == other._entries
        )

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, BiForm):
            return NotImplemented
        self._same_space(other)
        out = dict(self._entries)
        for k, v in other._entries.items():
            out[k] = out.get(k, 0) + v
        return BiForm(self._bidegree, self._dims, out, _trusted=True)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self) -> "BiForm":
        return BiForm(
            self._bidegree, self._dims, {k: -v for k, v in self._entries.items()}, _trusted=True
        )

    def __sub__(self, other):
        if not isinstance(other, BiForm):
            return NotImplemented
        return self + (-other)

    def scale(self, c: ScalarLike) -> "BiForm":
        c = _as_scalar(c)
        if not c:
            return BiForm(self._bidegree, self._dims)
        return BiForm(
            self._bidegree, self._dims, {k: c * v for k, v in self._entries.items()}, _trusted=True
        )

    def __mul__(self, other):
        # forms multiply by wedge, scalars by scaling
        if isinstance(other, BiForm):
            return wedge(self, other)
        if _is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def __xor__(self, other):
        if isinstance(other, BiForm):
            return wedge(self, other)
        return NotImplemented

    def __truediv__(self, other):
        if _is_scalar(other):
            return self.scale(1 / _as_scalar(other))
        return NotImplemented

    def transpose(self) -> "BiForm":
        return transpose(self)

    def star(self, side: str = "both") -> "BiForm":
        return star(self, side)

    def __repr__(self) -> str:
        r, s = self._bidegree
        if not self._entries:
            return f"BiForm({r},{s}; dims={self._dims}; 0)"
        terms = []
        for (I, J), v in sorted(self._entries.items()):
            lhs = "e^" + "".join(map(str, I)) if I else "1"
            rhs = "e^" + "".join(map(str, J)) if J else "1"
            terms.append(f"{v}*{lhs}(x){rhs}")
        return f"BiForm({r},{s}; dims={self._dims}; " + " + ".join(terms) + ")"


def basis(
    I: Iterable[int], J: Iterable[int], dims: tuple[int, int], value: ScalarLike = 1
) -> BiForm:
    """``value * e^I (x) e^J``; I and J may be unsorted."""
    I, J = tuple(I), tuple(J)
    return BiForm.from_raw((len(I), len(J)), dims, [(I, J, value)])


def _integerize(form: BiForm) -> tuple[int, list[tuple[Key, int]]]:
    den = 1
    for v in form._entries.values():
        den = math.lcm(den, v.denominator)
    return den, [(k, v.numerator * (den // v.denominator)) for k, v in form._entries.items()]


def wedge(a: BiForm, b: BiForm) -> BiForm:
    """Bi-form wedge: ``(phi1 (x) psi1) ^ (phi2 (x) psi2) = (phi1^phi2) (x) (psi1^psi2)``."""
    if a.dims != b.dims:
        raise ValueError(f"dimension mismatch: {a.dims} vs {b.dims}")
    (r1, s1), (r2, s2) = a.bidegree, b.bidegree
    nv, nw = a.dims
    if r1 + r2 > nv or s1 + s2 > nw:
        raise ValueError(
            f"degree overflow: {(r1 + r2, s1 + s2)} exceeds dims {(nv, nw)}"
        )
    bideg = (r1 + r2, s1 + s2)
    if not a._entries or not b._entries:
        return BiForm(bideg, a.dims)
    # exact integer accumulation over a common denominator
    da, ia = _integerize(a)
    db, ib = _integerize(b)
    by_first: dict[tuple[int, ...], list[tuple[tuple[int, ...], int]]] = defaultdict(list)
    for (I2, J2), y in ib:
        by_first[I2].append((J2, y))
    acc: dict[Key, int] = defaultdict(int)
    for (I1, J1), x in ia:
        for I2, rest in by_first.items():
            sv, K = merge(I1, I2)
            if not sv:
                continue
            for J2, y in rest:
                sw, L = merge(J1, J2)
                if not sw:
                    continue
                if sv == sw:
                    acc[K, L] += x * y
                else:
                    acc[K, L] -= x * y
    den = da * db
    out = {k: Fraction(v, den) for k, v in acc.items() if v}
    return BiForm(bideg, a.dims, out, _trusted=True)


_SIDES = ("first", "second", "both")


def star(form: BiForm, side: str = "both") -> BiForm:
    """Hodge star on the chosen tensor factor(s), orientation from the standard basis.

    On a single side the result depends on that orientation; the two-sided star
    on double forms does not.
    """
    if side not in _SIDES:
        raise ValueError(f"side must be one of {_SIDES}, got {side!r}")
    r, s = form.bidegree
    nv, nw = form.dims
    do_v = side in ("first", "both")
    do_w = side in ("second", "both")
    out: dict[Key, Fraction] = {}
    for (I, J), v in form._entries.items():
        sign = 1
        if do_v:
            si, I = complement_of(I, nv)
            sign *= si
        if do_w:
            sj, J = complement_of(J, nw)
            sign *= sj
        out[I, J] = v if sign > 0 else -v
    bideg = (nv - r if do_v else r, nw - s if do_w else s)
    return BiForm(bideg, form.dims, out, _trusted=True)


def transpose(form: BiForm) -> BiForm:
    """Interchange the two tensor factors; defined on double forms (nV == nW)."""
    nv, nw = form.dims
    if nv != nw:
        raise ValueError(f"transpose needs equal dims, got {form.dims}")
    r, s = form.bidegree
    return BiForm((s, r), form.dims, {(J, I): v for (I, J), v in form._entries.items()}, _trusted=True)


def is_symmetric(form: BiForm) -> bool:
    """Membership in C^r V: a square double form fixed by the transpose."""
    r, s = form.bidegree
    if r != s or form.dims[0] != form.dims[1]:
        return False
    return transpose(form) == form


def inner(a: BiForm, b: BiForm) -> Fraction:
    a._same_space(b)
    if len(a) > len(b):
        a, b = b, a
    total = Fraction(0)
    eb = b._entries
    for k, v in a._entries.items():
        w = eb.get(k)
        if w is not None:
            total += v * w
    return total


def norm_sq(form: BiForm) -> Fraction:
    return sum((v * v for v in form._entries.values()), Fraction(0))


def _half_projection(form: BiForm, side: str, sign: int) -> BiForm:
    r, s = form.bidegree
    nv, nw = form.dims
    deg, n = (r, nv) if side == "first" else (s, nw)
    if n % 4 != 0 or 2 * deg != n:
        raise ValueError(
            f"self-duality split on the {side} factor needs degree n/2 with n = 0 mod 4; "
            f"got degree {deg} in dimension {n}"
        )
    starred = star(form, side)
    combined = form + starred if sign > 0 else form - starred
    return combined.scale(Fraction(1, 2))


def project(form: BiForm, first: Optional[str] = None, second: Optional[str] = None) -> BiForm:
    """Self-dual / anti-self-dual component on each factor.

    ``first`` and ``second`` are ``'+'``, ``'-'`` or ``None`` (leave that factor
    alone).  ``project(T, '+', '-')`` is ``(1/4)(1 + *_1)(1 - *_2) T``.
    """
    out = form
    for side, choice in (("first", first), ("second", second)):
        if choice is None:
            continue
        if choice not in ("+", "-"):
            raise ValueError(f"projection choice must be '+', '-' or None, got {choice!r}")
        out = _half_projection(out, side, 1 if choice == "+" else -1)
    return out


def alt_slots(form: BiForm, m: int) -> BiForm:
    """Averaged antisymmetrization over the first ``m`` argument slots.

    For ``T`` in D^{p,q} and ``p <= m <= p + q`` this returns the (m, p+q-m)
    double form with components ``T_{[i_1 ... i_m] j_1 ... j_{p+q-m}}``.
    ``m = p + q`` is the complete antisymmetrization.
    """
    nv, nw = form.dims
    if nv != nw:
        raise ValueError(f"antisymmetrization needs a double form, got dims {form.dims}")
    p, q = form.bidegree
    if not p <= m <= p + q:
        raise ValueError(f"slot count {m} outside [{p}, {p + q}]")
    if m > nv:
        raise ValueError(f"cannot antisymmetrize {m} slots in dimension {nv}")
    extra = m - p
    # every permutation in S_m is determined, up to the p!(m-p)! reorderings
    # inside each factor, by which m-p of the moved indices leave the first slot group
    weight = Fraction(math.factorial(p) * math.factorial(extra), math.factorial(m))
    acc: dict[Key, Fraction] = defaultdict(Fraction)
    for (I, J), v in form._entries.items():
        for chosen in combinations(range(len(J)), extra):
            B = tuple(J[c] for c in chosen)
            s1, K = merge(I, B)
            if not s1:
                continue
            L = tuple(J[c] for c in range(len(J)) if c not in chosen)
            # J is the sorted concatenation of B and L
            s2, _ = merge(B, L)
            acc[K, L] += s1 * s2 * v
    out = {k: weight * v for k, v in acc.items() if v}
    return BiForm((m, p + q - m), form.dims, out, _trusted=True)


def alt(form: BiForm) -> BiForm:
    """Complete averaged antisymmetrization, a (p+q, 0) form: ``T_{[K]}``."""
    p, q = form.bidegree
    n = form.dims[0]
    if p + q > n:
        raise ValueError(f"cannot antisymmetrize {p + q} slots in dimension {n}")
    return alt_slots(form, p + q)


def bianchi(form: BiForm) -> BiForm:
    """Bianchi operator D^{p,q} -> D^{p+1,q-1}.

    On basis elements,
    ``b(e^{i_1..i_p} (x) e^{j_1..j_q}) = sum_l (-1)^l e^{j_l i_1..i_p} (x) e^{j_1..^j_l..j_q}``.
    """
    nv, nw = form.dims
    if nv != nw:
        raise ValueError(f"Bianchi operator needs a double form, got dims {form.dims}")
    p, q = form.bidegree
    if q == 0:
        raise ValueError("Bianchi operator is undefined on (p, 0) forms")
    if p + 1 > nv:
        raise ValueError(f"degree {p + 1} exceeds dimension {nv}")
    acc: dict[Key, Fraction] = defaultdict(Fraction)
    for (I, J), v in form._entries.items():
        for pos, j in enumerate(J):
            s, K = merge((j,), I)
            if not s:
                continue
            if pos % 2 == 0:  # l = pos + 1 odd
                s = -s
            acc[K, J[:pos] + J[pos + 1:]] += s * v
    out = {k: v for k, v in acc.items() if v}
    return BiForm((p + 1, q - 1), form.dims, out, _trusted=True)


def top_coefficient(form: BiForm) -> Fraction:
    """Coefficient of a top form relative to ``eps`` (or ``eps (x) eps_W``).

    Accepts bidegree (nV, nW) or (nV, 0).
    """
    r, s = form.bidegree
    nv, nw = form.dims
    if r != nv or s not in (0, nw):
        raise ValueError(f"bidegree {form.bidegree} is not top degree for dims {form.dims}")
    key = (tuple(range(1, nv + 1)), tuple(range(1, s + 1)))
    return form._entries.get(key, Fraction(0))


def _all_keys(bidegree: tuple[int, int], dims: tuple[int, int]) -> list[Key]:
    r, s = bidegree
    nv, nw = dims
    return [
        (I, J)
        for I in combinations(range(1, nv + 1), r)
        for J in combinations(range(1, nw + 1), s)
    ]


def random_biform(
    rng: Union[random.Random, int],
    bidegree: tuple[int, int],
    dims: tuple[int, int],
    terms: Optional[int] = None,
    max_num: int = 5,
    max_den: int = 3,
) -> BiForm:
    """Random bi-form with small rational coefficients.

    ``terms=None`` fills every basis key; otherwise that many keys are drawn
    without replacement.
    """
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    keys = _all_keys(bidegree, dims)
    if terms is not None and terms < len(keys):
        keys = rng.sample(keys, terms)
    entries = {}
    for k in keys:
        entries[k] = Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))
    return BiForm(bidegree, dims, entries, _trusted=True)
