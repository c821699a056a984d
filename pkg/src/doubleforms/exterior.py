"""Index-set combinatorics for exterior algebra on an oriented orthonormal basis.

Indices are 1-based.  A basis p-vector ``e^{i_1...i_p}`` is identified with the
strictly increasing tuple ``(i_1, ..., i_p)``; every reordering carries the sign
of the sorting permutation, and any repeated index kills the element (sign 0).

The tuple-level helpers (``sort_sign``, ``merge``, ``complement_of``) are what the
form algebra uses internally; ``canonicalize``, ``complement`` and
``wedge_basis`` are the typed entry points.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

__all__ = [
    "MultiIndex",
    "SignedIndex",
    "canonicalize",
    "complement",
    "wedge_basis",
    "sort_sign",
    "merge",
    "complement_of",
    "permutation_sign",
]


@dataclass(frozen=True)
class MultiIndex:
    """Strictly increasing index list over ``[1..dim]``."""

    indices: tuple[int, ...]
    dim: int

    def __post_init__(self) -> None:
        idx = tuple(int(i) for i in self.indices)
        object.__setattr__(self, "indices", idx)
        if self.dim < 0:
            raise ValueError(f"negative dimension {self.dim}")
        for i in idx:
            if not 1 <= i <= self.dim:
                raise ValueError(f"index {i} out of range [1..{self.dim}]")
        if any(a >= b for a, b in zip(idx, idx[1:])):
            raise ValueError(f"indices {idx} are not strictly increasing")

    @property
    def degree(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __len__(self) -> int:
        return len(self.indices)


@dataclass(frozen=True)
class SignedIndex:
    """A canonical index together with a sign in {+1, -1, 0}.

    Sign 0 marks a degenerate (repeated-index) result; its index is then empty.
    """

    index: MultiIndex
    sign: int

    def __post_init__(self) -> None:
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or 1, got {self.sign}")
        if self.sign == 0 and self.index.degree != 0:
            raise ValueError("degenerate SignedIndex must carry the empty index")


def permutation_sign(perm: Sequence[int]) -> int:
    """Sign of a permutation given as a sequence of distinct comparable items."""
    perm = list(perm)
    sign = 1
    seen = [False] * len(perm)
    # cycle decomposition on the ranks
    order = sorted(range(len(perm)), key=perm.__getitem__)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@lru_cache(maxsize=None)
def sort_sign(raw: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    """Return ``(sign, sorted)`` for an index tuple; sign 0 on repetition."""
    if len(set(raw)) != len(raw):
        return 0, ()
    inversions = 0
    n = len(raw)
    for a in range(n):
        ra = raw[a]
        for b in range(a + 1, n):
            if ra > raw[b]:
                inversions += 1
    return (-1 if inversions & 1 else 1), tuple(sorted(raw))


@lru_cache(maxsize=None)
def merge(first: tuple[int, ...], second: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    """Wedge of two canonical basis elements: ``e^first ^ e^second = sign e^merged``."""
    if not second:
        return 1, first
    if not first:
        return 1, second
    inversions = 0
    for i in first:
        for j in second:
            if i == j:
                return 0, ()
            if j < i:
                inversions += 1
    return (-1 if inversions & 1 else 1), tuple(sorted(first + second))


@lru_cache(maxsize=None)
def complement_of(index: tuple[int, ...], n: int) -> tuple[int, tuple[int, ...]]:
    """Complement ``I'`` of a canonical index and the sign of ``(I, I')`` as a permutation of [n]."""
    present = set(index)
    rest = tuple(i for i in range(1, n + 1) if i not in present)
    sign, _ = merge(index, rest)
    return sign, rest


def _check_range(raw: Iterable[int], n: int) -> tuple[int, ...]:
    raw = tuple(int(i) for i in raw)
    for i in raw:
        if not 1 <= i <= n:
            raise ValueError(f"index {i} out of range [1..{n}]")
    return raw


def canonicalize(raw: Iterable[int], n: int) -> SignedIndex:
    """Sort an index list, returning the sign of the sorting permutation.

    >>> canonicalize((3, 1, 2), 4)
    SignedIndex(index=MultiIndex(indices=(1, 2, 3), dim=4), sign=1)
    """
    raw = _check_range(raw, n)
    sign, idx = sort_sign(raw)
    return SignedIndex(MultiIndex(idx, n), sign)


def complement(index: MultiIndex) -> SignedIndex:
    """Oriented complement: ``e^I ^ (s e^{I'}) = e^{1...n}``."""
    sign, rest = complement_of(index.indices, index.dim)
    return SignedIndex(MultiIndex(rest, index.dim), sign)


def wedge_basis(first: MultiIndex, second: MultiIndex) -> SignedIndex:
    if first.dim != second.dim:
        raise ValueError(f"dimension mismatch: {first.dim} vs {second.dim}")
    sign, idx = merge(first.indices, second.indices)
    return SignedIndex(MultiIndex(idx, first.dim), sign)
