import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from doubleforms.biform import BiForm, basis, bianchi, random_biform, star, transpose
from doubleforms.curvature import (
    CurvatureTensor,
    constant_curvature,
    power,
    random_bianchi_form,
    random_curvature,
    thorpe_counterexample,
)
from doubleforms.identities import (
    COUNTEREXAMPLE_KEY,
    IdentityVerdict,
    PreconditionError,
    verify_altalt,
    verify_bianchi_star,
    verify_corollary_star_bianchi,
    verify_forward_failure,
    verify_kernel_preserved,
    verify_lemma_identity,
)
from doubleforms.suites import all_bases

from conftest import biforms
from oracles import alt_first, naive_bianchi, naive_star_both, naive_transpose


def test_verdict_witness_invariant():
    with pytest.raises(ValueError):
        IdentityVerdict("x", False)
    with pytest.raises(ValueError):
        IdentityVerdict("x", True, witness=(((1,), ()), Fraction(1), Fraction(0)))
    assert not IdentityVerdict("x", False, witness=(((1,), ()), Fraction(1), Fraction(0)))


# lemma


def test_lemma_examples():
    assert verify_lemma_identity(basis((1,), (2, 3), (3, 3)))
    assert verify_lemma_identity(random_biform(4, (2, 2), (4, 4)))
    assert verify_lemma_identity(BiForm.zero((1, 2), (3, 3)))
    with pytest.raises(PreconditionError):
        verify_lemma_identity(basis((1,), (), (3, 3)))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_lemma_exhaustive_small(n):
    for p in range(0, n):
        for q in range(1, n + 1):
            if p + q > 4:
                continue
            for T in all_bases((p, q), n):
                assert verify_lemma_identity(T)


def test_lemma_single_component_by_hand():
    T = basis((1,), (2, 3), (3, 3))
    lhs = alt_first(T, 2, (1, 2, 3))
    assert lhs != 0
    assert bianchi(T).coefficient((1, 2), (3,)) == (-1) ** 2 * 2 * lhs


# counterexample


def test_forward_failure_examples():
    v = verify_forward_failure(8)
    assert v.holds
    assert "T_[12345]678 = 1/5" in v.detail
    assert bianchi(thorpe_counterexample(8)).coefficient(*COUNTEREXAMPLE_KEY) == -1
    assert verify_forward_failure(9).holds
    with pytest.raises(ValueError):
        verify_forward_failure(7)


def test_forward_failure_rejects_other_shapes_and_reports_failure():
    with pytest.raises(PreconditionError):
        verify_forward_failure(8, basis((1, 2, 3, 4), (5, 6, 7, 8), (8, 8)))
    # a symmetric (4,4) form with nonzero alternation is reported as failing, with a witness
    T = basis((1, 2, 3, 4), (5, 6, 7, 8), (8, 8))
    v = verify_forward_failure(8, T + transpose(T))
    assert not v.holds and v.witness is not None


def test_counterexample_bruteforce_oracle():
    T = thorpe_counterexample(8)
    assert alt_first(T, 8, tuple(range(1, 9))) == 0
    K, L = COUNTEREXAMPLE_KEY
    assert alt_first(T, 5, K + L) == Fraction(1, 5)
    assert naive_bianchi(T).coefficient(K, L) == -1


# altalt


@pytest.mark.parametrize("seed", range(10))
def test_altalt_symmetric_p1(seed):
    S = random_biform(seed, (2, 2), (4, 4), terms=8)
    assert verify_altalt(S + transpose(S))


def test_altalt_counterexample_and_curvature_square():
    assert verify_altalt(thorpe_counterexample(8))
    R = random_curvature(1, 8, 8, 2, want_bianchi=True)
    assert verify_altalt(power(R, 2))


def test_altalt_preconditions():
    with pytest.raises(PreconditionError):
        verify_altalt(basis((1, 2), (1, 3), (4, 4)))
    with pytest.raises(PreconditionError):
        verify_altalt(basis((1,), (1,), (4, 4)))
    with pytest.raises(PreconditionError):
        verify_altalt(basis((1, 2), (1, 2), (3, 3)))


@pytest.mark.parametrize("seed", range(4))
def test_altalt_against_bruteforce(seed):
    S = random_biform(seed, (2, 2), (4, 4), terms=10)
    T = S + transpose(S)
    for K in combinations(range(1, 5), 3):
        for last in range(1, 5):
            full = alt_first(T, 4, K + (last,))
            partial = alt_first(T, 3, K + (last,))
            assert full == partial


# Bianchi-star


def test_bianchi_star_hand_example():
    T = basis((1,), (2,), (2, 2))
    tsb = transpose(star(bianchi(T)))
    bst = bianchi(star(transpose(T)))
    unit = basis((1, 2), (), (2, 2))
    assert tsb == unit
    assert bst == -unit
    assert verify_bianchi_star(T)


@pytest.mark.parametrize("n, p, q", [(4, 2, 2), (5, 1, 3), (5, 2, 1), (6, 3, 2)])
def test_bianchi_star_matches_naive_composites(n, p, q):
    rng = random.Random(n * 100 + p * 10 + q)
    for _ in range(3):
        T = random_biform(rng, (p, q), (n, n), terms=6)
        lhs = naive_transpose(naive_star_both(naive_bianchi(T)))
        rhs = naive_bianchi(naive_star_both(naive_transpose(T)))
        assert lhs == rhs.scale((-1) ** (p + q - 1))
        assert verify_bianchi_star(T)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_bianchi_star_exhaustive_small(n):
    for p in range(0, n):
        for q in range(1, n + 1):
            for T in all_bases((p, q), n):
                assert verify_bianchi_star(T)


def test_bianchi_star_inadmissible():
    with pytest.raises(PreconditionError):
        verify_bianchi_star(basis((1,), (), (3, 3)))
    with pytest.raises(PreconditionError):
        verify_bianchi_star(basis((1, 2), (1,), (2, 2)))
    with pytest.raises(PreconditionError):
        verify_bianchi_star(basis((1,), (1,), (2, 3)))


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_bianchi_star_property(data):
    n = data.draw(st.integers(2, 6))
    p = data.draw(st.integers(0, n - 1))
    q = data.draw(st.integers(1, n))
    T = data.draw(biforms(dims=(n, n), bidegree=(p, q)))
    assert verify_bianchi_star(T)


# kernel preservation and corollary


@pytest.mark.parametrize("seed", range(8))
def test_star_preserves_bianchi_kernel(seed):
    R = random_bianchi_form(random.Random(seed), 4 + seed % 3)
    assert verify_kernel_preserved(R)
    assert bianchi(naive_star_both(R)).is_zero()


def test_kernel_preconditions():
    with pytest.raises(PreconditionError):
        verify_kernel_preserved(basis((1, 2), (1, 3), (4, 4)))
    T = basis((1, 2), (3, 4), (4, 4))
    with pytest.raises(PreconditionError):
        verify_kernel_preserved(T + transpose(T))


def test_corollary_examples():
    assert verify_corollary_star_bianchi(constant_curvature(4, 1), 1)
    for seed in range(3):
        R = random_curvature(seed, 4, 4, 1, want_bianchi=True)
        assert verify_corollary_star_bianchi(R, 1)


@pytest.mark.slow
def test_corollary_dimension_eight():
    R = random_curvature(11, 8, 8, 2, want_bianchi=True)
    assert verify_corollary_star_bianchi(R, 2)


def test_corollary_preconditions():
    with pytest.raises(PreconditionError):
        verify_corollary_star_bianchi(random_curvature(0, 4, 4, 1), 1)
    with pytest.raises(PreconditionError):
        verify_corollary_star_bianchi(constant_curvature(4), 2)
    with pytest.raises(PreconditionError):
        verify_corollary_star_bianchi(CurvatureTensor.of(basis((1, 2), (1, 3), (4, 4))), 1)


def alt_vanishes(T):
    # in dim 4 the complete alternation of a (2,2) form has one component
    return alt_first(T, 4, (1, 2, 3, 4)) == 0


def test_p1_equivalence_on_symmetric_dim4():
    rng = random.Random(5)
    seen = {True: 0, False: 0}
    for i in range(30):
        if i % 2:
            T = random_bianchi_form(rng, 4, terms=2)
        else:
            S = random_biform(rng, (2, 2), (4, 4), terms=4)
            T = S + transpose(S)
        a = alt_vanishes(T)
        b = bianchi(T).is_zero()
        assert a == b
        seen[b] += 1
    assert seen[True] and seen[False]

