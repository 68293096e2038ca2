import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from toroidal.errors import BoundExceeded
from toroidal.field import QuadraticField
from toroidal.ideals import (FractionalIdeal, check_NT, class_representatives, different, ideal,
                             intersect, inverse_different, is_principal, minimal_norm_elements,
                             random_element, totally_positive_elements)

from conftest import integral_elements


def o(F):
    return FractionalIdeal.unit(F)


def test_identity_and_inverse(F5):
    I = ideal(F5, 2, F5(1, 1))
    assert o(F5) * I == I
    s = ideal(F5, F5.sqrt_D())
    assert s.inverse() * s == o(F5)
    assert ideal(F5, 2).norm() == 4


@pytest.mark.parametrize("D, N", [(5, 5), (2, 8), (3, 12)])
def test_different_norm(D, N):
    F = QuadraticField(D)
    d = different(F)
    assert d.norm() == N
    assert d.contains_ideal(ideal(F, F.discriminant))


def test_trace_dual(F5):
    assert o(F5).trace_dual() == inverse_different(F5)
    I = ideal(F5, 3, F5(1, 1))
    assert I.trace_dual().trace_dual() == I
    rng = random.Random(1)
    Is = I.trace_dual()
    for _ in range(100):
        x, y = random_element(I, rng, 20), random_element(Is, rng, 20)
        assert (x * y).trace().denominator == 1


def test_trace_dual_is_maximal(F5):
    # oracle: the dual basis of the trace pairing, solved directly
    I = ideal(F5, 7, F5(3, 1))
    Is = I.trace_dual()
    G = [[(x * y).trace() for y in Is.basis] for x in I.basis]
    assert abs(G[0][0] * G[1][1] - G[0][1] * G[1][0]) == 1


def test_check_NT(F5):
    c = o(F5)
    assert check_NT(ideal(F5, 7), c)
    assert not check_NT(ideal(F5, 2), c)
    assert not check_NT(ideal(F5, 3), c)
    assert not check_NT(ideal(F5, F5.sqrt_D()), c)
    with pytest.raises(ValueError):
        check_NT(ideal(F5, Fraction(1, 7)), c)


@pytest.mark.parametrize("D, h", [(5, 1), (2, 1), (3, 1), (10, 2), (15, 2), (26, 2)])
def test_class_number(D, h):
    reps = class_representatives(QuadraticField(D))
    assert len(reps) == h
    assert all(R.is_integral() for R in reps)


def test_principal_generator(F5):
    x = F5(3, 7)
    g = is_principal(ideal(F5, x))
    assert g is not None and ideal(F5, g) == ideal(F5, x)
    F10 = QuadraticField(10)
    assert is_principal(ideal(F10, 2, F10.sqrt_D())) is None


def test_minimal_norm_tiny_ideal(F5):
    # regression: ideals of norm far below 1 used to exhaust the enumeration limit
    I = ideal(F5, Fraction(1, 210))
    n, _ = minimal_norm_elements(I)
    assert n == Fraction(1, 210 ** 2)


def test_intersection(F5):
    I, J = ideal(F5, 2), ideal(F5, 3)
    assert intersect(I, J) == ideal(F5, 6)


def _box_positive(I, T):
    """Brute force over a coordinate box that contains every point with embeddings in [0, T]."""
    r = I.F.D ** 0.5
    emb = [(float(x.surd()[0]) + float(x.surd()[1]) * r, float(x.surd()[0]) - float(x.surd()[1]) * r)
           for x in I.basis]
    d = emb[0][0] * emb[1][1] - emb[0][1] * emb[1][0]
    inv = [[emb[1][1] / d, -emb[1][0] / d], [-emb[0][1] / d, emb[0][0] / d]]
    box = int(max(abs(inv[i][0] * s + inv[i][1] * t) for i in range(2)
                  for s in (0, T) for t in (0, T))) + 2
    out = {I.F.zero}
    for a in range(-box, box + 1):
        for b in range(-box, box + 1):
            x = I.element([a, b])
            if x.is_totally_positive() and x.trace() <= T:
                out.add(x)
    return out


@pytest.mark.parametrize("D", [2, 5, 13])
def test_totally_positive_elements_box_oracle(D):
    F = QuadraticField(D)
    for I in (o(F), inverse_different(F)):
        assert set(totally_positive_elements(I, 12)) == _box_positive(I, 12)


@given(st.sampled_from([2, 5, 13]).flatmap(lambda D: st.tuples(
    integral_elements(D), integral_elements(D), integral_elements(D), integral_elements(D))))
def test_ideal_arithmetic_properties(gens):
    a, b, c, d = gens
    F = a.F
    I, J = ideal(F, a, b), ideal(F, c, d)
    assert I * J == J * I
    assert (I * J).norm() == I.norm() * J.norm()
    assert I * I.inverse() == o(F)
    assert I.trace_dual() == I.inverse() * inverse_different(F)
    assert I.trace_dual().trace_dual() == I
    # inclusion reversal
    assert (I + J).trace_dual() == intersect(I.trace_dual(), J.trace_dual())
    assert I.trace_dual().contains_ideal((I + J).trace_dual())


@given(st.sampled_from([2, 5, 13]).flatmap(lambda D: integral_elements(D)))
def test_principal_dual(x):
    F = x.F
    assert ideal(F, x).trace_dual() == ideal(F, x.inverse()) * inverse_different(F)
