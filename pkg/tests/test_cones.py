import itertools
import random

import pytest
from hypothesis import assume, given, strategies as st

from toroidal import cones as cn
from toroidal.cones import Cone


def test_toric_examples():
    quadrant = Cone(((1, 0), (0, 1)))
    quadric = Cone(((1, 1), (1, -1)))
    ray = Cone(((1, 0),))
    assert sorted(cn.dual_monoid_generators(quadrant)) == [(0, 1), (1, 0)]
    g = sorted(cn.dual_monoid_generators(quadric))
    assert g == [(1, -1), (1, 0), (1, 1)]
    assert tuple(a + b for a, b in zip(g[0], g[2])) == tuple(2 * x for x in g[1])
    assert sorted(cn.dual_monoid_generators(ray)) == [(0, -1), (0, 1), (1, 0)]
    assert cn.is_smooth(quadrant) and not cn.is_smooth(quadric) and cn.is_smooth(ray)


def test_faces_and_orbits():
    sigma = Cone(((1, 0), (0, 1)))
    fs = cn.faces(sigma)
    assert len(fs) == 4
    assert len(cn.faces(Cone(((1, 0),)))) == 2
    assert [cn.orbit_dimension(t) for t in fs] == [2, 1, 1, 0]


def test_limit_points_and_morphisms():
    q = Cone(((1, 0), (0, 1)))
    assert cn.same_limit_point((1, 1), (2, 3), q)
    assert not cn.same_limit_point((1, 0), (1, 1), q)
    assert cn.same_limit_point((5, 2), (5, 2), q)
    ray = Cone(((1, 0),))
    assert cn.admits_equivariant_morphism(ray, q)
    assert not cn.admits_equivariant_morphism(q, ray)
    assert cn.admits_equivariant_morphism(q, q)


def test_rejects_non_strictly_convex():
    with pytest.raises(ValueError):
        Cone(((1, 0), (-1, 0)))


def brute_hilbert_basis(sigma, box=None):
    """Irreducible lattice points of the closed cone: not a sum of two nonzero points of it."""
    a, b = sigma.rays
    box = box or max(abs(x) for x in a + b)
    pts = [v for v in itertools.product(range(-box, box + 1), repeat=2)
           if any(v) and sigma.contains_closure(v)]
    S = set(pts)
    return sorted(v for v in pts
                  if not any((v[0] - w[0], v[1] - w[1]) in S for w in pts if w != v))


vectors = st.tuples(st.integers(-12, 12), st.integers(-12, 12)).filter(any)


@st.composite
def two_cones(draw):
    a = cn.primitive(draw(vectors))
    b = cn.primitive(draw(vectors))
    assume(cn.det2(a, b) != 0)
    return Cone((a, b))


@given(two_cones())
def test_hilbert_basis_box_oracle(sigma):
    # the Hilbert basis of a 2-cone lies in the parallelogram spanned by its rays
    assert sorted(cn.hilbert_basis(sigma)) == brute_hilbert_basis(sigma)


@given(two_cones())
def test_smooth_iff_two_generators(sigma):
    assert cn.is_smooth(sigma) == (abs(cn.det2(*sigma.rays)) == 1)
    assert cn.is_smooth(sigma) == (len(cn.dual_monoid_generators(sigma)) == 2)


@given(two_cones())
def test_hilbert_basis_minimal(sigma):
    hb = cn.hilbert_basis(sigma)
    S = set(hb)
    for u, v in itertools.combinations_with_replacement(hb, 2):
        assert (u[0] + v[0], u[1] + v[1]) not in S


@given(two_cones())
def test_double_dual(sigma):
    dd = cn.dual_cone(cn.dual_cone(sigma))
    assert set(dd.rays) == set(sigma.rays)
    # dual monoid generators pair nonnegatively with the rays
    for g in cn.dual_monoid_generators(sigma):
        assert all(cn.dot(g, r) >= 0 for r in sigma.rays)


@given(two_cones())
def test_face_orbit_grading(sigma):
    for tau in cn.faces(sigma):
        assert tau.dim + cn.orbit_dimension(tau) == 2


def test_random_cones_grading_200():
    rng = random.Random(0)
    n = 0
    while n < 200:
        a = (rng.randint(-20, 20), rng.randint(-20, 20))
        b = (rng.randint(-20, 20), rng.randint(-20, 20))
        if cn.det2(a, b) == 0:
            continue
        sigma = Cone((cn.primitive(a), cn.primitive(b)))
        assert all(t.dim + cn.orbit_dimension(t) == 2 for t in cn.faces(sigma))
        n += 1
