import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from toroidal.field import QuadraticField, fundamental_unit, totally_positive_square_units
from toroidal.lattice import det

from conftest import element_pairs, elements


def float_embeddings(x):
    a, b = x.surd()
    r = x.F.D ** 0.5
    return float(a) + float(b) * r, float(a) - float(b) * r


def test_signs_examples(F5):
    assert F5.one.signs() == (1, 1)
    assert F5.sqrt_D().signs() == (1, -1)
    assert F5.from_surd(Fraction(3, 2), Fraction(1, 2)).is_totally_positive()
    assert not F5.sqrt_D().is_totally_positive()
    golden = F5.from_surd(Fraction(1, 2), Fraction(1, 2))
    assert not golden.is_totally_positive()
    assert not F5.zero.is_totally_positive()


def test_trace_norm_examples(F5):
    assert F5.one.trace() == 2
    assert F5.from_surd(Fraction(1, 2), Fraction(1, 2)).norm() == -1
    for D in (2, 3, 7):
        assert QuadraticField(D).sqrt_D().trace() == 0


@pytest.mark.parametrize("D, expected", [(5, (Fraction(1, 2), Fraction(1, 2))), (2, (1, 1)), (3, (2, 1)),
                                         (13, (Fraction(3, 2), Fraction(1, 2))), (7, (8, 3))])
def test_fundamental_unit(D, expected):
    assert fundamental_unit(QuadraticField(D)).surd() == tuple(map(Fraction, expected))


def _brute_unit(F, box=40):
    """Smallest unit > 1 over a coordinate box, comparing exact embeddings."""
    best = None
    for p, q in itertools.product(range(-box, box + 1), range(1, box + 1)):
        x = F(p, q)
        if abs(x.norm()) == 1 and x.embeddings()[0] > 1:
            if best is None or x.embeddings()[0] < best.embeddings()[0]:
                best = x
    return best


@pytest.mark.parametrize("D", [2, 3, 5, 6, 7, 10, 13, 14, 21])
def test_fundamental_unit_box_oracle(D):
    F = QuadraticField(D)
    assert fundamental_unit(F) == _brute_unit(F)


@pytest.mark.parametrize("D, expected", [(5, (Fraction(3, 2), Fraction(1, 2))), (2, (3, 2))])
def test_square_generator(D, expected):
    g = totally_positive_square_units(QuadraticField(D)).square_generator
    assert g.surd() == tuple(map(Fraction, expected))
    assert g.is_totally_positive() and g != 1


@pytest.mark.parametrize("D, disc", [(5, 5), (2, 8), (3, 12), (13, 13)])
def test_discriminant_from_trace_form(D, disc):
    F = QuadraticField(D)
    assert F.discriminant == disc
    assert det([[(x * y).trace() for y in F.basis] for x in F.basis]) == disc


def test_rejects_non_squarefree():
    with pytest.raises(ValueError):
        QuadraticField(8)
    with pytest.raises(ValueError):
        QuadraticField(1)


@given(element_pairs())
def test_trace_additive_norm_multiplicative(pair):
    x, y = pair
    assert (x + y).trace() == x.trace() + y.trace()
    assert (x * y).norm() == x.norm() * y.norm()


@given(element_pairs())
def test_totally_positive_closed_under_product(pair):
    x, y = pair
    if x.is_totally_positive() and y.is_totally_positive():
        assert (x * y).is_totally_positive()


@given(elements(nonzero=True))
def test_inverse(x):
    if not x.is_zero():
        assert x * x.inverse() == x.F.one


@given(elements())
def test_signs_match_floats(x):
    # exact sign decisions against a float evaluation, away from ties
    for e, f in zip(x.embeddings(), float_embeddings(x)):
        if abs(f) > 1e-9:
            assert e.sign() == (1 if f > 0 else -1)


@given(elements())
def test_trace_norm_from_embeddings(x):
    e1, e2 = x.embeddings()
    assert e1.a + e2.a == x.trace()
    assert x.norm() == x.surd()[0] ** 2 - x.F.D * x.surd()[1] ** 2
