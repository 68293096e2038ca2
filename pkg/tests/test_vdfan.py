import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from toroidal import fans, vdfan
from toroidal.field import QuadraticField, totally_positive_square_units
from toroidal.vdfan import DegenerationData, VDConeLabel

F5 = QuadraticField(5)


def data_for(s, D=5):
    return DegenerationData.standard(QuadraticField(D), s)


def base_sigma(data):
    fan = fans.build_unit_invariant_fan(data.F, data.X_star)
    return next(c for c in fan.cones if c.dim == 2)


def brute_factor(data, i, q, li, half=10):
    """Minimum over a box of half-width ``half`` around the rounded centre -l_i / q of factor i."""
    mid = [round(z) for z in data.b_ideal.coordinates(-li / q)]
    best, arg = None, set()
    for off in itertools.product(range(-half, half + 1), repeat=2):
        b = data.b_ideal.element([m + o for m, o in zip(mid, off)])
        v = (q * data.mus[i] * b * b + 2 * li * data.mus[i] * b).trace()
        if best is None or v < best:
            best, arg = v, {b}
        elif v == best:
            arg.add(b)
    return best, arg


def brute_phi(data, q, l, half=10):
    """chi_beta is a sum over the factors, so the minimum is the product of factor minima."""
    parts = [brute_factor(data, i, q, li, half) for i, li in enumerate(l)]
    return sum(v for v, _ in parts), set(itertools.product(*(a for _, a in parts)))


def brute_joint(data, q, l, half):
    """Joint box minimum over b^s without using the splitting."""
    mid = [round(z) for li in l for z in data.b_ideal.coordinates(-li / q)]
    vals = []
    for off in itertools.product(range(-half, half + 1), repeat=2 * data.s):
        z = [m + o for m, o in zip(mid, off)]
        beta = tuple(data.b_ideal.element(z[2 * i:2 * i + 2]) for i in range(data.s))
        vals.append(vdfan.chi_beta(data, beta, q, l))
    return min(vals)


def test_standard_data():
    d = data_for(2)
    assert d.mus[0] == F5.one
    assert d.mus[1] == F5.from_surd(Fraction(3, 2), Fraction(-1, 2))
    with pytest.raises(ValueError):
        DegenerationData((F5.sqrt_D(),), d.a_ideal, d.b_ideal, d.X_star)


def test_phi_at_l_zero():
    for s in (1, 2):
        d = data_for(s)
        q = F5(3, 1)
        zero = tuple(F5.zero for _ in range(s))
        assert vdfan.phi(d, q, zero) == (0, frozenset({zero}))


def test_phi_translate_of_zero():
    d = data_for(1)
    q, b0 = F5(2, 1), F5(1, 1)
    # l = q b0 is the translate of l = 0, so its argmin is -b0 and phi = -chi_{b0}(q, 0)
    val, arg = vdfan.phi(d, q, (q * b0,))
    assert arg == frozenset({(-b0,)})
    assert val == -vdfan.chi_beta(d, (b0,), q, (F5.zero,))


@pytest.mark.parametrize("s, n", [(1, 100), (2, 40)])
def test_phi_box_oracle(s, n):
    d = data_for(s)
    rng = random.Random(s)
    for _ in range(n):
        q, l = vdfan.random_q(d, rng), vdfan.random_l(d, rng, bound=3)
        val, arg = vdfan.phi(d, q, l)
        bval, barg = brute_phi(d, q, l)
        assert val == bval and arg == barg


def test_phi_joint_box():
    d = data_for(2)
    rng = random.Random(5)
    for _ in range(5):
        q, l = vdfan.random_q(d, rng), vdfan.random_l(d, rng, bound=3)
        assert brute_joint(d, q, l, 2) >= vdfan.phi(d, q, l)[0]


def test_chi_two_paths():
    rng = random.Random(0)
    for s in (1, 2):
        d = data_for(s)
        for _ in range(300):
            q, l, b = vdfan.random_q(d, rng), vdfan.random_l(d, rng), vdfan.random_beta(d, rng)
            assert vdfan.chi_beta(d, b, q, l) == vdfan.chi_beta_embeddings(d, b, q, l)


def test_chi_linear_in_point():
    d = data_for(1)
    rng = random.Random(3)
    for _ in range(50):
        q1, q2 = vdfan.random_q(d, rng), vdfan.random_q(d, rng)
        l1, l2 = vdfan.random_l(d, rng), vdfan.random_l(d, rng)
        b = vdfan.random_beta(d, rng)
        lhs = vdfan.chi_beta(d, b, q1 + 2 * q2, (l1[0] + 2 * l2[0],))
        assert lhs == vdfan.chi_beta(d, b, q1, l1) + 2 * vdfan.chi_beta(d, b, q2, l2)


@pytest.mark.parametrize("s", [1, 2])
def test_one_twisted(s):
    d = data_for(s)
    rng = random.Random(10 + s)
    for _ in range(150):
        q, l, b = vdfan.random_q(d, rng), vdfan.random_l(d, rng), vdfan.random_beta(d, rng)
        assert vdfan.verify_one_twisted(d, q, l, b)
        # composition of two twists
        b2 = vdfan.random_beta(d, rng)
        q1, l1 = vdfan.act_beta(q, l, b)
        lhs = vdfan.phi(d, *vdfan.act_beta(q1, l1, b2))[0]
        rhs = vdfan.phi(d, q, l)[0] - vdfan.chi_beta(d, b, q, l) - vdfan.chi_beta(d, b2, q1, l1)
        assert lhs == rhs


def test_phi_homogeneous():
    d = data_for(1)
    rng = random.Random(4)
    for _ in range(30):
        q, l = vdfan.random_q(d, rng), vdfan.random_l(d, rng)
        lam = Fraction(rng.randint(1, 9), rng.randint(1, 4))
        assert vdfan.phi(d, lam * q, (lam * l[0],))[0] == lam * vdfan.phi(d, q, l)[0]


def test_membership_examples():
    d = data_for(1)
    sigma = base_sigma(d)
    q = vdfan.random_q(d, random.Random(0), sigma)
    zero = (F5.zero,)
    assert vdfan.tau_membership(d, VDConeLabel(sigma, {zero}), q, zero)
    # the wall between the cells of 0 and 1 at l = -q/2
    l = (-q / 2,)
    wall = VDConeLabel(sigma, {zero, (F5.one,)})
    assert vdfan.phi(d, F5.one, (-F5.one / 2,))[1] == frozenset({zero, (F5.one,)})
    assert vdfan.tau_membership(d, wall, q, l) == ((F5.one,) in vdfan.phi(d, q, l)[1])
    # a unique minimizer outside B
    assert not vdfan.tau_membership(d, VDConeLabel(sigma, {(F5(3),)}), q, zero)


@pytest.mark.parametrize("s", [1, 2])
def test_membership_routes_and_equivariance(s):
    d = data_for(s)
    sigma = base_sigma(d)
    u = totally_positive_square_units(d.F).fundamental
    rng = random.Random(20 + s)
    for _ in range(40):
        q, l = vdfan.random_q(d, rng, sigma), vdfan.random_l(d, rng)
        lab = vdfan.voronoi_label(d, sigma, q, l)
        y = vdfan.random_beta(d, rng)
        assert vdfan.tau_membership(d, lab, q, l)
        assert vdfan.tau_membership(d, vdfan.act_on_label(d, lab, u=u), *vdfan.act_on_point(q, l, u=u))
        assert vdfan.tau_membership(d, vdfan.act_on_label(d, lab, y=y), *vdfan.act_on_point(q, l, y=y))
        assert vdfan.tau_membership(d, vdfan.act_on_label(d, lab, u=u, y=y),
                                    *vdfan.act_on_point(q, l, u=u, y=y))
        assert vdfan.commutation_square(d, lab, u, y)
        # a random other label: both routes must still agree (no exception)
        other = VDConeLabel(sigma, {vdfan.random_beta(d, rng)})
        vdfan.tau_membership(d, other, q, l)


def test_identity_action():
    d = data_for(1)
    lab = VDConeLabel(base_sigma(d), {(F5(1, 1),)})
    assert vdfan.act_on_label(d, lab, u=F5.one, y=(F5.zero,)) == lab


def test_equidimensional():
    d = data_for(1)
    sigma = base_sigma(d)
    rep = vdfan.equidimensional_check(d, VDConeLabel(sigma, {(F5.zero,)}), 10, seed=0)
    assert rep.nonempty and rep.fills
    # B = {0, 3}: the two cells are never adjacent, so the cone is empty
    empty = vdfan.equidimensional_check(d, VDConeLabel(sigma, {(F5.zero,), (F5(3),)}), 5, seed=0)
    assert not empty.nonempty


@given(st.integers(0, 10 ** 6))
def test_voronoi_labels_nonempty(seed):
    d = data_for(1)
    sigma = base_sigma(d)
    rng = random.Random(seed)
    q, l = vdfan.random_q(d, rng, sigma), vdfan.random_l(d, rng)
    lab = vdfan.voronoi_label(d, sigma, q, l)
    assert vdfan.tau_membership(d, lab, q, l, route="min")
    assert vdfan.tau_membership(d, lab, q, l, route="inequalities")
