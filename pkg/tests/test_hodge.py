from collections import Counter

import pytest
from hypothesis import given, strategies as st

from toroidal import hodge
from toroidal.weights import AlgebraicWeight


@st.composite
def weights(draw, d=2):
    parity = draw(st.integers(0, 1))
    return AlgebraicWeight(tuple(2 * draw(st.integers(1, 12)) + parity for _ in range(d)))


def test_p_of_J_examples():
    w = AlgebraicWeight((2, 4))
    assert w.k0 == 4 and w.m == (1, 0)
    assert hodge.p_of_J(w, {0}) == (2, 0)
    assert hodge.p_of_J(w, ()) == w.m
    assert hodge.p_of_J((2, 2), {0, 1}) == (1, 1)


def test_multiset_examples():
    assert hodge.hodge_tate_multiset((2, 2)) == [0, 1, 1, 2]
    for k in (2, 4, 7):
        assert hodge.hodge_tate_multiset((k, k)) == [0, k - 1, k - 1, 2 * k - 2]
    assert hodge.hodge_tate_multiset((2, 4)) == [1, 2, 4, 5]


def test_rejects_bad_weights():
    with pytest.raises(ValueError):
        AlgebraicWeight((2, 3))
    with pytest.raises(ValueError):
        AlgebraicWeight((1, 1))
    with pytest.raises(ValueError):
        AlgebraicWeight((4,))


def test_symmetry_examples():
    assert hodge.verify_weight_symmetry((2, 2))
    w = AlgebraicWeight((2, 4))
    assert all(hodge.size(hodge.p_of_J(w, J)) + hodge.size(hodge.p_of_J(w, hodge.complement(J, 2))) == 6
               for J in hodge.subsets(2))


def test_bgg_examples():
    terms = hodge.bgg_terms((2, 2), 1)
    assert sorted(J for J, _, _ in terms) == [(0,), (1,)]
    assert all(shift == 1 for _, _, shift in terms)
    assert hodge.bgg_terms((2, 2), 7) == []


def test_weight_bound():
    w = AlgebraicWeight((2, 4))
    assert hodge.weight_bound_check(w, 0) == {sum(w.m)}
    assert hodge.weight_bound_check(w, 2) == set(hodge.hodge_tate_multiset(w))
    with pytest.raises(ValueError):
        hodge.weight_bound_check(w, 3)


@given(weights())
def test_quadratic_closed_form(w):
    assert hodge.hodge_tate_multiset(w) == hodge.quadratic_multiset(w)


@given(st.integers(2, 4).flatmap(lambda d: weights(d)))
def test_invariants_any_degree(w):
    ms = hodge.hodge_tate_multiset(w)
    assert len(ms) == 2 ** w.d
    assert hodge.verify_weight_symmetry(w)
    top = (w.k0 - 1) * w.d
    assert Counter(ms) == Counter(top - h for h in ms)
    table = hodge.bgg_table(w)
    assert sum(len(v) for v in table.values()) == 2 ** w.d
    empty, full = hodge.p_of_J(w, ()), hodge.p_of_J(w, range(w.d))
    assert all(a + b == w.k0 - 1 for a, b in zip(empty, full))
    sets = [hodge.weight_bound_check(w, j) for j in range(w.d + 1)]
    assert all(a <= b for a, b in zip(sets, sets[1:]))


@given(weights())
def test_character_pairing_matches(w):
    for J in hodge.subsets(w.d):
        assert hodge.character_pairing(w, J) == hodge.size(hodge.p_of_J(w, J))
