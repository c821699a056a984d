from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from doubleforms.exterior import (
    MultiIndex,
    SignedIndex,
    canonicalize,
    complement,
    merge,
    permutation_sign,
    sort_sign,
    wedge_basis,
)

from oracles import perm_sign


def mi(*idx, n=4):
    return MultiIndex(tuple(idx), n)


@pytest.mark.parametrize(
    "raw, expected, sign",
    [((3, 1, 2), (1, 2, 3), 1), ((1, 1), (), 0), ((2, 1), (1, 2), -1), ((1, 2, 3), (1, 2, 3), 1)],
)
def test_canonicalize_examples(raw, expected, sign):
    out = canonicalize(raw, 4)
    assert out.index.indices == expected
    assert out.sign == sign


def test_canonicalize_rejects_out_of_range():
    with pytest.raises(ValueError):
        canonicalize((0, 1), 4)
    with pytest.raises(ValueError):
        canonicalize((5,), 4)


def test_multiindex_invariants():
    with pytest.raises(ValueError):
        MultiIndex((2, 1), 4)
    with pytest.raises(ValueError):
        MultiIndex((1, 5), 4)
    I = mi(1, 3)
    assert I.degree == 2 and list(I) == [1, 3] and len(I) == 2


def test_signed_index_zero_needs_empty_index():
    with pytest.raises(ValueError):
        SignedIndex(mi(1), 0)
    SignedIndex(MultiIndex((), 4), 0)


def test_complement_examples():
    c = complement(mi(1, 2))
    assert (c.index.indices, c.sign) == ((3, 4), 1)
    c = complement(mi(1, 3))
    assert (c.index.indices, c.sign) == ((2, 4), -1)


@pytest.mark.parametrize("n", [4, 8])
def test_complement_twice_is_identity_in_middle_degree(n):
    for I in combinations(range(1, n + 1), n // 2):
        c1 = complement(MultiIndex(I, n))
        c2 = complement(c1.index)
        assert c2.index.indices == I
        assert c1.sign * c2.sign == 1


@given(st.integers(1, 7).flatmap(lambda n: st.tuples(st.just(n), st.sets(st.integers(1, n)))))
def test_complement_sign_matches_star_squared(case):
    n, s = case
    I = MultiIndex(tuple(sorted(s)), n)
    p = len(I)
    c1 = complement(I)
    c2 = complement(c1.index)
    assert c2.index == I
    assert c1.sign * c2.sign == (-1) ** (p * (n - p))


@pytest.mark.parametrize(
    "I, J, out, sign",
    [((2,), (1,), (1, 2), -1), ((1, 2), (2, 3), (), 0), ((1, 2), (3, 4), (1, 2, 3, 4), 1)],
)
def test_wedge_basis_examples(I, J, out, sign):
    w = wedge_basis(mi(*I), mi(*J))
    assert (w.index.indices, w.sign) == (out, sign)


@given(st.sets(st.integers(1, 6)), st.sets(st.integers(1, 6)))
def test_wedge_basis_graded_commutative(a, b):
    I, J = mi(*sorted(a), n=6), mi(*sorted(b), n=6)
    ab, ba = wedge_basis(I, J), wedge_basis(J, I)
    if a & b:
        assert ab.sign == ba.sign == 0
    else:
        assert ab.sign == (-1) ** (len(a) * len(b)) * ba.sign


@given(st.permutations(list(range(1, 7))))
def test_signs_agree_with_inversion_count(perm):
    assert permutation_sign([p - 1 for p in perm]) == perm_sign(perm)
    assert sort_sign(tuple(perm)) == (perm_sign(perm), tuple(range(1, 7)))


@given(st.lists(st.integers(1, 6), max_size=6))
def test_canonicalize_idempotent(raw):
    first = canonicalize(raw, 6)
    again = canonicalize(first.index.indices, 6)
    assert again.index == first.index
    assert again.sign == (1 if first.sign else again.sign)


def test_merge_overlap_and_order():
    assert merge((1, 3), (2,)) == (-1, (1, 2, 3))
    assert merge((1,), (1,))[0] == 0
