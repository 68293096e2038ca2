import pytest
from fractions import Fraction
from hypothesis import settings, strategies as st

from toroidal.field import QuadraticField

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

FIELDS = (2, 3, 5, 13)


@pytest.fixture
def F5():
    return QuadraticField(5)


@pytest.fixture
def F2():
    return QuadraticField(2)


small_fraction = st.builds(Fraction, st.integers(-30, 30), st.integers(1, 6))


@st.composite
def elements(draw, D=None, nonzero=False):
    F = QuadraticField(D if D is not None else draw(st.sampled_from(FIELDS)))
    x = F(draw(small_fraction), draw(small_fraction))
    if nonzero and x.is_zero():
        x = F.one
    return x


@st.composite
def element_pairs(draw):
    D = draw(st.sampled_from(FIELDS))
    return draw(elements(D)), draw(elements(D))


@st.composite
def integral_elements(draw, D, bound=6, nonzero=True):
    F = QuadraticField(D)
    x = F(draw(st.integers(-bound, bound)), draw(st.integers(-bound, bound)))
    if nonzero and x.is_zero():
        x = F.one
    return x
