"""Hilbert-Jacobi expansions sum a_{xi, alpha} q^xi zeta^alpha of index mu.

Indices are pairs (xi, alpha) with xi in X and alpha in a = b c. The
coefficients satisfy

* support: a_{xi,alpha} != 0 only if 4 xi mu - alpha^2 is in (X c)_+ or 0,
* translation: a_{mu b^2 + alpha b + xi, alpha + 2 mu b} = a_{xi,alpha} for b in b,
* units: a_{u^2 xi, u alpha} = u^kappa a_{xi,alpha}.
"""
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import MembershipError
from .field import FieldElement
from .ideals import FractionalIdeal
from .qexp import _equal, _is_zero, _scale, totally_positive_points


def discriminant(xi, alpha, mu, lattice=None):
    """4 xi mu - alpha^2; with ``lattice`` (= X c) given, membership is asserted."""
    D = 4 * xi * mu - alpha * alpha
    if lattice is not None and D not in lattice:
        raise MembershipError(f"4 xi mu - alpha^2 = {D} is not in X c")
    return D


def _nonneg(D):
    return D.is_zero() or D.is_totally_positive()


def beta_translate(xi, alpha, beta, mu):
    return mu * beta * beta + alpha * beta + xi, alpha + 2 * mu * beta


def enumerate_support(mu, X, a_ideal, T, limit=10**6):
    """Pairs (xi, alpha) with Tr(xi) <= T and 4 xi mu - alpha^2 totally positive or 0.

    For fixed xi each embedding satisfies alpha^2 <= 4 xi mu, so summing
    gives Tr(alpha^2) <= Tr(4 xi mu): the enumeration of that ellipsoid in
    a is a certified superset, filtered exactly.
    """
    if not mu.is_totally_positive():
        raise ValueError("the index must be totally positive")
    out = []
    for xi in totally_positive_points(X, T, limit):
        bound = (4 * xi * mu).trace()
        cands = [a for a, _ in a_ideal.short_elements(bound, limit=limit)]
        for alpha in sorted(cands, key=lambda a: a.sort_key()):
            if _nonneg(discriminant(xi, alpha, mu)):
                out.append((xi, alpha))
    return out


def beta_orbit_key(xi, alpha, mu, b_ideal):
    """Invariant of the translation orbit: the discriminant and alpha modulo 2 mu b."""
    L = b_ideal * (2 * mu)
    frac = tuple(z - (z.numerator // z.denominator) for z in L.coordinates(alpha))
    return discriminant(xi, alpha, mu), frac


def jacobi_koecher_violations(f):
    bad = []
    nonzero = [(k, v) for k, v in f.coeffs.items() if not _is_zero(v)]
    if nonzero and not f.mu.is_totally_positive():
        bad.append(("index", f.mu))
    for (xi, alpha), _ in nonzero:
        if xi not in f.X or alpha not in f.a_ideal:
            bad.append(("lattice", (xi, alpha)))
        elif not _nonneg(discriminant(xi, alpha, f.mu)):
            bad.append(("support", (xi, alpha)))
        elif xi.is_zero() and alpha.is_zero() and not f.weight.is_parallel:
            bad.append(("constant", (xi, alpha)))
    return bad


@dataclass(frozen=True)
class JacobiExpansion:
    X: FractionalIdeal
    a_ideal: FractionalIdeal
    b_ideal: FractionalIdeal
    mu: FieldElement
    weight: object
    T: Fraction
    coeffs: dict = field(hash=False)
    cusp: object = field(default=None, compare=False)
    enforce: bool = field(default=True, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "T", Fraction(self.T))
        for xi, _ in self.coeffs:
            if xi.trace() > self.T:
                raise ValueError(f"index {xi} lies beyond the truncation")
        if self.enforce:
            bad = jacobi_koecher_violations(self)
            if bad:
                raise ValueError(f"Jacobi support law violated: {bad[0]}")

    def __getitem__(self, key):
        return self.coeffs.get(key, 0)

    @classmethod
    def at_cusp(cls, cusp, mu, weight, T, coeffs, **kw):
        return cls(cusp.X, cusp.a_ideal, cusp.b, mu, weight, T, coeffs, cusp=cusp, **kw)

    def domain(self):
        return enumerate_support(self.mu, self.X, self.a_ideal, self.T)

    def with_coefficient(self, key, value):
        coeffs = dict(self.coeffs)
        coeffs[key] = value
        return JacobiExpansion(self.X, self.a_ideal, self.b_ideal, self.mu, self.weight, self.T,
                               coeffs, self.cusp, self.enforce)


def from_discriminant(g, X, a_ideal, b_ideal, mu, weight, T):
    """a_{xi,alpha} = g(4 xi mu - alpha^2) on the support."""
    coeffs = {(xi, al): g(discriminant(xi, al, mu)) for xi, al in enumerate_support(mu, X, a_ideal, T)}
    return JacobiExpansion(X, a_ideal, b_ideal, mu, weight, T, coeffs)


def orbit_constant(X, a_ideal, b_ideal, mu, weight, T, seed=0, values=range(1, 10)):
    """Random values that are constant along translation orbits."""
    rng = random.Random(seed)
    table = {}
    coeffs = {}
    for xi, al in enumerate_support(mu, X, a_ideal, T):
        if xi.is_zero() and al.is_zero() and not weight.is_parallel:
            coeffs[(xi, al)] = 0
            continue
        key = beta_orbit_key(xi, al, mu, b_ideal)
        if key not in table:
            table[key] = rng.choice(list(values))
        coeffs[(xi, al)] = table[key]
    return JacobiExpansion(X, a_ideal, b_ideal, mu, weight, T, coeffs)


@dataclass(frozen=True)
class JacobiReport:
    ok: bool
    checked: int
    witness: tuple = None


def verify_jacobi_relations(f, betas=(), units=()):
    """Check the translation relation for each beta in b and the unit relation for each u."""
    count = 0
    dom = f.domain()
    for beta in betas:
        if beta not in f.b_ideal:
            raise MembershipError(f"beta = {beta} is not in b")
        for xi, al in dom:
            x2, a2 = beta_translate(xi, al, beta, f.mu)
            if x2.trace() > f.T:
                continue
            count += 1
            if not _equal(f[(x2, a2)], f[(xi, al)]):
                return JacobiReport(False, count, ("translation", beta, (xi, al), (x2, a2)))
    for u in units:
        factor = f.weight.unit_factor(u)
        for xi, al in dom:
            x2, a2 = u * u * xi, u * al
            if x2.trace() > f.T:
                continue
            count += 1
            if not _equal(f[(x2, a2)], _scale(factor, f[(xi, al)])):
                return JacobiReport(False, count, ("unit", u, (xi, al), (x2, a2)))
    return JacobiReport(True, count)


def jacobi_koecher_check(f):
    return not jacobi_koecher_violations(f)
