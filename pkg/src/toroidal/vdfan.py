"""Voronoi-Delaunay cones over a cusp fan (Kuga-Sato combinatorics).

Points are pairs (q, l) with q in X^*_+ and l = (l_1, ..., l_s) in (a^*)^s,
both allowed rational. For beta in b^s,

    chi_beta(q, l) = sum_i Tr(q mu_i beta_i^2 + 2 l_i mu_i beta_i),
    phi(q, l)      = min_{beta in b^s} chi_beta(q, l),

and a label (sigma, B) names the cone of points with q in sigma and
chi_beta = phi for every beta in B. The minimum splits over the factors:
chi is sum_i Tr(A_i (beta_i - c_i)^2) - Tr(l_i^2 mu_i / q) with A_i = q mu_i
and c_i = -l_i / q, so each factor is a closest-vector problem.
"""
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

from . import lattice
from .cones import Cone, det2, primitive
from .errors import BoundExceeded
from .fans import unit_matrix
from .ideals import FractionalIdeal, inverse_different, totally_positive_elements


@dataclass(frozen=True)
class DegenerationData:
    mus: tuple
    a_ideal: FractionalIdeal
    b_ideal: FractionalIdeal
    X_star: FractionalIdeal

    def __post_init__(self):
        for mu in self.mus:
            if not mu.is_totally_positive():
                raise ValueError(f"mu = {mu} is not totally positive")
            if mu not in self.c_ideal:
                raise ValueError(f"mu = {mu} is not in c")

    @property
    def s(self):
        return len(self.mus)

    @property
    def F(self):
        return self.a_ideal.F

    @property
    def c_ideal(self):
        return self.a_ideal / self.b_ideal

    @property
    def a_star(self):
        return self.a_ideal.trace_dual()

    @classmethod
    def standard(cls, F, s=1):
        """Cusp at infinity with c = o: b = o, a = c = o, X^* = d^{-1}; mu_1 = 1 and further mu_i small."""
        o = FractionalIdeal.unit(F)
        pos = [x for x in totally_positive_elements(o, 8) if not x.is_zero()]
        return cls(tuple(pos[:s]), o, o, inverse_different(F))

    def bilinear(self, q, beta, alpha):
        """b_q(beta, alpha) = Tr(q alpha beta)."""
        return (q * alpha * beta).trace()


@dataclass(frozen=True)
class VDConeLabel:
    sigma: Cone
    B: frozenset

    def __post_init__(self):
        object.__setattr__(self, "B", frozenset(tuple(b) for b in self.B))

    def sorted_B(self):
        return sorted(self.B, key=lambda b: tuple(x.c for x in b))


def chi_beta(data, beta, q, l):
    return sum((q * mu * b * b + 2 * li * mu * b).trace() for mu, b, li in zip(data.mus, beta, l))


def _surd_mul(x, y, D):
    return (x[0] * y[0] + D * x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def chi_beta_embeddings(data, beta, q, l):
    """chi_beta evaluated embedding by embedding in a + b sqrt(D) form (independent path)."""
    D = data.F.D
    rat, irr = Fraction(0), Fraction(0)
    for mu, b, li in zip(data.mus, beta, l):
        for sgn in (1, -1):
            qv, mv, bv, lv = [(x.surd()[0], sgn * x.surd()[1]) for x in (q, mu, b, li)]
            t1 = _surd_mul(_surd_mul(qv, mv, D), _surd_mul(bv, bv, D), D)
            t2 = _surd_mul(_surd_mul(lv, mv, D), bv, D)
            rat += t1[0] + 2 * t2[0]
            irr += t1[1] + 2 * t2[1]
    if irr != 0:
        raise AssertionError("embedding sum is not rational")
    return rat


def _nearest(I, c):
    return I.element([round(z) for z in I.coordinates(c)])


def _factor_min(data, i, q, li):
    """All minimizers of Tr(q mu_i b^2 + 2 l_i mu_i b) over b in b, and the minimum."""
    mu = data.mus[i]
    A = q * mu
    c = -li / q
    b0 = _nearest(data.b_ideal, c)
    R = (A * (b0 - c) * (b0 - c)).trace()
    best, arg = None, []
    for b, _ in data.b_ideal.short_elements(R, weight=A, center=c):
        v = (A * b * b + 2 * li * mu * b).trace()
        if best is None or v < best:
            best, arg = v, [b]
        elif v == best:
            arg.append(b)
    return best, arg


def phi(data, q, l):
    """(phi(q, l), all minimizing beta in b^s)."""
    if not q.is_totally_positive():
        raise ValueError("q must be totally positive")
    total = Fraction(0)
    args = [()]
    for i, li in enumerate(l):
        v, arg = _factor_min(data, i, q, li)
        total += v
        args = [a + (b,) for a in args for b in arg]
    return total, frozenset(args)


def act_beta(q, l, beta):
    """beta . (q, l) = (q, l + q beta)."""
    return q, tuple(li + q * b for li, b in zip(l, beta))


def verify_one_twisted(data, q, l, beta):
    lhs = phi(data, *act_beta(q, l, beta))[0]
    rhs = phi(data, q, l)[0] - chi_beta(data, beta, q, l)
    return lhs == rhs


def _in_sigma(data, sigma, q):
    return sigma.contains(data.X_star.coordinates(q))


def _member_by_min(data, B, q, l):
    val, _ = phi(data, q, l)
    return all(chi_beta(data, beta, q, l) == val for beta in B)


def _member_by_inequalities(data, B, q, l, limit=10**6):
    """For beta in B and every e in b^s: Tr(sum e_i (2 l_i + q(2 beta_i + e_i)) mu_i) >= 0.

    The left side is chi_{beta+e} - chi_beta; it can only be negative for e
    in the joint ellipsoid sum Q_i(beta_i + e_i - c_i) <= sum Q_i(beta_i - c_i)
    with Q_i(x) = Tr(q mu_i x^2), which is enumerated exactly.
    """
    s = data.s
    bI = data.b_ideal
    grams = [bI.gram(q * mu) for mu in data.mus]
    n = 2 * s
    G = [[Fraction(0)] * n for _ in range(n)]
    for i, g in enumerate(grams):
        for a in range(2):
            for b in range(2):
                G[2 * i + a][2 * i + b] = g[a][b]
    for beta in B:
        center, R = [], Fraction(0)
        for mu, b, li in zip(data.mus, beta, l):
            c = -li / q
            center.extend(bI.coordinates(c - b))
            R += (q * mu * (b - c) * (b - c)).trace()
        for z, _ in lattice.enumerate_ellipsoid(G, R, center, limit):
            e = [bI.element(z[2 * i:2 * i + 2]) for i in range(s)]
            val = sum((ei * (2 * li + q * (2 * b + ei)) * mu).trace()
                      for ei, b, li, mu in zip(e, beta, l, data.mus))
            if val < 0:
                return False
    return True


def tau_membership(data, label, q, l, route="both"):
    """Is (q, l) in the cone named by the label? Both routes are computed and compared by default."""
    if not _in_sigma(data, label.sigma, q):
        return False
    if route == "min":
        return _member_by_min(data, label.B, q, l)
    if route == "inequalities":
        return _member_by_inequalities(data, label.B, q, l)
    a = _member_by_min(data, label.B, q, l)
    b = _member_by_inequalities(data, label.B, q, l)
    if a != b:
        raise AssertionError(f"membership routes disagree at q = {q}, l = {l}")
    return a


def act_on_label(data, label, u=None, y=None):
    """Unit u: (sigma, B) -> (u^2 sigma, u^{-1} B); translation y: (sigma, B) -> (sigma, B - y).

    With both given, y acts first, matching ``act_on_point``.
    """
    sigma, B = label.sigma, label.B
    if y is not None:
        B = {tuple(b - yi for b, yi in zip(beta, y)) for beta in B}
    if u is not None:
        M = unit_matrix(data.X_star, u * u)
        uinv = u.inverse()
        sigma = sigma.transform(M)
        B = {tuple(uinv * b for b in beta) for beta in B}
    return VDConeLabel(sigma, frozenset(B))


def act_on_point(q, l, u=None, y=None):
    """The matching action on points: u: (q, l) -> (u^2 q, u l); y: (q, l) -> (q, l + q y)."""
    if y is not None:
        q, l = act_beta(q, l, y)
    if u is not None:
        q, l = u * u * q, tuple(u * li for li in l)
    return q, l


def commutation_square(data, label, u, y):
    """Acting by y then u equals acting by u then u^{-1} y, on labels."""
    one = act_on_label(data, act_on_label(data, label, y=y), u=u)
    uinv = u.inverse()
    two = act_on_label(data, act_on_label(data, label, u=u), y=tuple(uinv * yi for yi in y))
    return one == two


# -- sampling ----------------------------------------------------------------

def random_q(data, rng, sigma=None, bound=6, max_den=4):
    """Random rational totally positive q, inside sigma (relative interior) if given."""
    Xs = data.X_star
    for _ in range(10_000):
        if sigma is not None and sigma.dim > 0:
            w = [Fraction(rng.randint(1, bound), rng.randint(1, max_den)) for _ in sigma.rays]
            coords = [sum(wi * r[j] for wi, r in zip(w, sigma.rays)) for j in range(2)]
        else:
            den = rng.randint(1, max_den)
            coords = [Fraction(rng.randint(-bound, bound), den) for _ in range(2)]
        q = Xs.element(coords)
        if q.is_totally_positive():
            return q
    raise BoundExceeded("could not sample a totally positive q")


def random_l(data, rng, bound=6, max_den=3):
    A = data.a_star
    return tuple(A.element([Fraction(rng.randint(-bound, bound), rng.randint(1, max_den)) for _ in range(2)])
                 for _ in range(data.s))


def random_beta(data, rng, bound=3):
    bI = data.b_ideal
    return tuple(bI.element([rng.randint(-bound, bound) for _ in range(2)]) for _ in range(data.s))


def voronoi_label(data, sigma, q, l):
    """The label (sigma, argmin phi) of the cone through (q, l)."""
    return VDConeLabel(sigma, phi(data, q, l)[1])


def fiber_point(data, B, q):
    """An l making all chi_beta (beta in B) equal, nearest in coordinates to -q * centroid(B).

    Returns None if the linear conditions are inconsistent.
    """
    B = sorted(B, key=lambda b: tuple(x.c for x in b))
    s = data.s
    cent = [sum((beta[i] for beta in B), data.F.zero) / len(B) for i in range(s)]
    base = tuple(-q * c for c in cent)
    if len(B) == 1:
        return base
    A = data.a_star
    # unknown delta in coordinates over the basis of a^*, factor by factor
    basis = A.basis
    b0 = B[0]
    rows, rhs = [], []
    for beta in B[1:]:
        row = []
        for i in range(s):
            mu = data.mus[i]
            for w in basis:
                row.append(2 * (w * mu * (beta[i] - b0[i])).trace())
        rows.append(row)
        rhs.append(chi_beta(data, b0, q, base) - chi_beta(data, beta, q, base))
    sol = lattice.solve_rational(rows, rhs)
    if sol is None:
        return None
    return tuple(base[i] + basis[0] * sol[2 * i] + basis[1] * sol[2 * i + 1] for i in range(s))


@dataclass(frozen=True)
class EquidimReport:
    nonempty: bool
    fills: bool
    samples: int
    hull: tuple = ()


def equidimensional_check(data, label, samples=20, seed=0):
    """Does the projection of the cone to q fill sigma?

    Samples interior points q of sigma, builds a candidate fiber point with
    ``fiber_point`` and tests membership. ``hull`` holds the two extreme
    witnessed directions of q (lattice coordinates).
    """
    rng = random.Random(seed)
    found = []
    for _ in range(samples):
        q = random_q(data, rng, label.sigma)
        l = fiber_point(data, label.B, q)
        if l is not None and tau_membership(data, label, q, l):
            found.append(primitive(data.X_star.coordinates(q)))
    if not found:
        return EquidimReport(False, False, samples)
    order = sorted(set(found), key=cmp_to_key(lambda v, w: -1 if det2(v, w) > 0 else (det2(v, w) < 0)))
    return EquidimReport(True, len(found) == samples, samples, (order[0], order[-1]))
