"""Truncated q-expansions sum a_xi q^xi at a cusp.

Coefficients are indexed by xi in X, truncated at Tr(xi) <= T. Missing keys
mean a zero coefficient. The coefficient ring is whatever the values are:
ints, Fractions, field elements, or residues modulo ``modulus``.
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import MembershipError
from .field import FieldElement, totally_positive_square_units
from .ideals import FractionalIdeal, is_coprime, ideal, totally_positive_elements
from .weights import HalfIntegralWeight


class KoecherViolation(ValueError):
    pass


def totally_positive_points(X, T, limit=10**6):
    """{xi in X : xi >> 0, Tr(xi) <= T} together with 0."""
    return totally_positive_elements(X, T, limit)


def _is_zero(v):
    if isinstance(v, FieldElement):
        return v.is_zero()
    return v == 0


def koecher_violations(X, weight, coeffs):
    """Keys breaking the support law, plus 0 when kappa is not parallel and a_0 != 0."""
    bad = []
    for xi, v in coeffs.items():
        if _is_zero(v):
            continue
        if xi not in X:
            bad.append(xi)
        elif not (xi.is_zero() or xi.is_totally_positive()):
            bad.append(xi)
        elif xi.is_zero() and not weight.is_parallel:
            bad.append(xi)
    return bad


@dataclass(frozen=True)
class QExpansion:
    X: FractionalIdeal
    weight: object
    T: Fraction
    coeffs: dict = field(hash=False)
    cusp: object = field(default=None, compare=False)
    modulus: int = None
    enforce: bool = field(default=True, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "T", Fraction(self.T))
        coeffs = {}
        for xi, v in self.coeffs.items():
            if not isinstance(xi, FieldElement):
                xi = self.X.F(*xi)
            if xi.trace() > self.T:
                raise ValueError(f"coefficient index {xi} lies beyond the truncation")
            if self.modulus is not None:
                v = int(v) % self.modulus
            coeffs[xi] = v
        object.__setattr__(self, "coeffs", coeffs)
        if self.enforce:
            bad = koecher_violations(self.X, self.weight, coeffs)
            if bad:
                raise KoecherViolation(f"coefficients outside X_+ u {{0}} or a_0 in non-parallel weight: {bad[0]}")

    def __getitem__(self, xi):
        return self.coeffs.get(xi, 0)

    def support(self):
        return sorted((xi for xi, v in self.coeffs.items() if not _is_zero(v)), key=lambda x: x.sort_key())

    def materialize(self):
        """Coefficients on every index of the truncated domain (zeros included)."""
        return {xi: self[xi] for xi in totally_positive_points(self.X, self.T)}

    @classmethod
    def from_orbit_representatives(cls, X, weight, T, values, unit=None, **kw):
        """Spread values on representatives over their orbits under xi -> u^2 xi.

        The coefficient at u^{2j} xi is (u^kappa)^j a_xi. The default u is the
        fundamental unit, so the orbits are those of the squares of units.
        """
        F = X.F
        u = unit or totally_positive_square_units(F).fundamental
        T = Fraction(T)
        coeffs = {}
        for xi, a in values.items():
            if xi.is_zero():
                coeffs[xi] = a
                continue
            for step, factor in ((u * u, weight.unit_factor(u)),
                                 ((u * u).inverse(), weight.unit_factor(u.inverse()))):
                x, v = xi, a
                while x.trace() <= T:
                    coeffs[x] = v
                    x, v = x * step, _scale(factor, v)
        return cls(X, weight, T, coeffs, **kw)


def _scale(factor, v):
    """factor * v, staying rational when the factor is."""
    if isinstance(factor, FieldElement) and factor.is_rational():
        factor = factor.c[0]
    if isinstance(factor, FieldElement) or isinstance(v, FieldElement):
        return factor * v if isinstance(factor, FieldElement) else v * factor
    return factor * v


def _equal(x, y, modulus=None):
    if modulus is not None:
        return (int(x) - int(y)) % modulus == 0
    if isinstance(x, FieldElement) or isinstance(y, FieldElement):
        F = x.F if isinstance(x, FieldElement) else y.F
        x = x if isinstance(x, FieldElement) else F(x)
        y = y if isinstance(y, FieldElement) else F(y)
    return x == y


@dataclass(frozen=True)
class RelationReport:
    ok: bool
    checked: int
    witness: tuple = None


def verify_unit_relation(f, units):
    """Check a_{u^2 eps xi} = eps^{kappa/2} u^kappa a_xi on all in-range indices.

    ``units`` holds u or pairs (u, eps). With D = G_m the totally positive
    rational units reduce to eps = 1, so eps is required to be 1.
    """
    count = 0
    dom = f.materialize()
    for item in units:
        u, eps = item if isinstance(item, tuple) else (item, 1)
        if eps != 1:
            raise ValueError("only eps = 1 occurs for D = G_m")
        factor = f.weight.unit_factor(u)
        if f.modulus is not None:
            if not factor.is_rational():
                raise ValueError("u^kappa is irrational; residue coefficients need a parallel weight")
            factor = factor.c[0]
        u2 = u * u
        for xi, a in dom.items():
            y = u2 * xi
            if y.trace() > f.T:
                continue
            count += 1
            lhs = f[y]
            rhs = _scale(factor, a)
            if not _equal(lhs, rhs, f.modulus):
                return RelationReport(False, count, (u, xi, lhs, rhs))
    return RelationReport(True, count)


def koecher_check(f):
    return not koecher_violations(f.X, f.weight, f.coeffs)


def orbit_reduce(xi, unit=None):
    """Least-trace element of the orbit of xi under the unit (default: generator of o^{x2}).

    Returns (rep, power) with xi = unit^power * rep. Trace is convex along
    the orbit, so a walk in the decreasing direction finds the minimum; ties
    are broken by the embeddings.
    """
    if not xi.is_totally_positive():
        raise ValueError("orbit reduction needs a totally positive element")
    eps = unit or totally_positive_square_units(xi.F).square_generator
    inv = eps.inverse()
    rep, p = xi, 0
    while True:
        down, up = rep * inv, rep * eps
        best = min((rep, 0), (down, 1), (up, -1), key=lambda t: t[0].sort_key())
        if best[1] == 0:
            return rep, p
        rep, p = best[0], p + best[1]


def orbit_representatives(X, T, unit=None):
    reps = {}
    for xi in totally_positive_points(X, T):
        if xi.is_zero():
            reps[xi] = xi
        else:
            reps.setdefault(orbit_reduce(xi, unit)[0], xi)
    return sorted(reps, key=lambda x: x.sort_key())


def expand_orbits(reps, T, unit=None):
    """All eps^k rep with trace at most T."""
    out = set()
    for r in reps:
        if r.is_zero():
            out.add(r)
            continue
        eps = unit or totally_positive_square_units(r.F).square_generator
        for step in (eps, eps.inverse()):
            x = r
            while x.trace() <= T:
                out.add(x)
                x = x * step
    return out


def agree_on_representatives(f, g, unit=None):
    """Compare two expansions on the orbit representatives only."""
    return all(_equal(f[r], g[r], f.modulus) for r in orbit_representatives(f.X, f.T, unit))


def theta_qexp(eta, c0, T, n0=None):
    """q-expansion of theta(z, eta) = sum_{alpha in c0} eta(alpha) q^{alpha^2}.

    ``eta`` is a callable on c0 (constant on classes modulo n0 c0). The
    expansion lives on X = c = c0^2, which must be prime to 2, and carries
    the weight t/2.
    """
    F = c0.F
    c = c0 * c0
    if not is_coprime(c, ideal(F, 2)):
        raise ValueError("c = c0^2 must be prime to 2")
    coeffs = {}
    for alpha, _ in c0.short_elements(Fraction(T)):
        xi = alpha * alpha
        if xi.trace() <= T:
            coeffs[xi] = coeffs.get(xi, 0) + eta(alpha)
    return QExpansion(c, HalfIntegralWeight.t_over_2(F.degree), T, coeffs)


def square_root_count(xi, c0):
    """#{alpha in c0 : alpha^2 = xi}, by enumeration of Tr(alpha^2) = Tr(xi)."""
    return sum(1 for a, _ in c0.short_elements(xi.trace()) if a * a == xi)


def _vp(n, p):
    if n == 0:
        return math.inf
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _valuation(v, p):
    """p-adic valuation of a rational or of a field element (minimum over integral-basis coordinates)."""
    if isinstance(v, FieldElement):
        return min(_valuation(x, p) for x in v.c)
    v = Fraction(v)
    if v == 0:
        return math.inf
    return _vp(v.numerator, p) - _vp(v.denominator, p)


def padic_congruence(f, p, m):
    """Are all coefficients divisible by p^m?"""
    if f.modulus is not None:
        if f.modulus % p ** m:
            raise ValueError("residues modulo the coefficient modulus do not determine p^m-divisibility")
        return all(int(v) % p ** m == 0 for v in f.coeffs.values())
    return all(_valuation(v, p) >= m for v in f.coeffs.values())


def cusp_depth(a, c, p):
    """ord_p(c) for a representative (a, c) primitive at p; infinity when c = 0."""
    F = a.F
    o = FractionalIdeal.unit(F)
    if not (a in o and c in o):
        raise MembershipError("the cusp representative must be integral")
    if a.is_zero() and c.is_zero():
        raise ValueError("(0, 0) is not a cusp")
    nrm = FractionalIdeal.from_generators(F, [x for x in (a, c) if not x.is_zero()]).norm()
    if nrm.numerator % p == 0:
        raise ValueError(f"(a, c) is not primitive at {p}")
    return _valuation(c, p)
