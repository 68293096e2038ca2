"""Fractional ideals as exact lattices.

An ideal is stored canonically as ``(H, den)``: the lattice is
``(1/den) * rowspan(H)`` in integral-basis coordinates, ``den`` is the least
positive integer making it integral and ``H`` is the row-style upper
triangular Hermite normal form (positive pivots, entries above a pivot
reduced into ``[0, pivot)``). Two ideals are equal iff these agree.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd, isqrt

from . import lattice
from .errors import BoundExceeded
from .field import FieldElement, UnitGroupData, totally_positive_square_units


@dataclass(frozen=True)
class FractionalIdeal:
    F: object
    hnf: tuple
    den: int

    @classmethod
    def from_lattice_rows(cls, F, rows):
        H, den = lattice.rational_hnf(rows)
        if len(H) != F.degree:
            raise ValueError("generators do not span a full-rank lattice")
        return cls(F, tuple(tuple(r) for r in H), den)

    @classmethod
    def from_generators(cls, F, gens):
        """The ideal ``g_1 o + ... + g_k o``."""
        gens = [g if isinstance(g, FieldElement) else F(g) for g in gens]
        rows = [(g * w).c for g in gens for w in F.basis if not g.is_zero()]
        if not rows:
            raise ValueError("the zero ideal is not a fractional ideal")
        return cls.from_lattice_rows(F, rows)

    @classmethod
    def principal(cls, x):
        return cls.from_generators(x.F, [x])

    @classmethod
    def unit(cls, F):
        return cls.from_generators(F, [F.one])

    # -- lattice data -----------------------------------------------------
    @cached_property
    def basis(self):
        return tuple(FieldElement(self.F, [Fraction(x, self.den) for x in r]) for r in self.hnf)

    @cached_property
    def _inv_basis(self):
        return lattice.inverse([[Fraction(x, self.den) for x in r] for r in self.hnf])

    def coordinates(self, x):
        """Rational coordinates of x in the ideal's Z-basis."""
        inv = self._inv_basis
        d = self.F.degree
        return tuple(sum(x.c[i] * inv[i][j] for i in range(d)) for j in range(d))

    def element(self, coords):
        out = self.F.zero
        for z, b in zip(coords, self.basis):
            out = out + b * z
        return out

    def __contains__(self, x):
        if not isinstance(x, FieldElement):
            x = self.F(x)
        return all(z.denominator == 1 for z in self.coordinates(x))

    def contains_ideal(self, other):
        return all(b in self for b in other.basis)

    def is_integral(self):
        return self.den == 1

    # -- arithmetic -------------------------------------------------------
    def __mul__(self, other):
        if isinstance(other, FractionalIdeal):
            rows = [(x * y).c for x in self.basis for y in other.basis]
            return FractionalIdeal.from_lattice_rows(self.F, rows)
        if isinstance(other, (FieldElement, int, Fraction)):
            x = other if isinstance(other, FieldElement) else self.F(other)
            if x.is_zero():
                raise ValueError("scaling by zero")
            return FractionalIdeal.from_lattice_rows(self.F, [(b * x).c for b in self.basis])
        return NotImplemented

    __rmul__ = __mul__

    def __add__(self, other):
        rows = [b.c for b in self.basis] + [b.c for b in other.basis]
        return FractionalIdeal.from_lattice_rows(self.F, rows)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = FractionalIdeal.unit(self.F)
        for _ in range(k):
            out = out * self
        return out

    def inverse(self):
        """``{x : x I in o}``: the dual of the lattice of multiplication functionals."""
        rows = []
        for b in self.basis:
            rows.extend(b.regular_matrix())
        H, den = lattice.rational_hnf(rows)
        R = [[Fraction(x, den) for x in r] for r in H]
        return FractionalIdeal.from_lattice_rows(self.F, lattice.dual_basis(R))

    def __truediv__(self, other):
        return self * other.inverse()

    def norm(self):
        return Fraction(abs(int(lattice.det([list(r) for r in self.hnf]))), self.den ** self.F.degree)

    def trace_dual(self):
        """``{y : Tr(x y) in Z for all x in I}``."""
        T = self.F.trace_form
        B = [[Fraction(x, self.den) for x in r] for r in self.hnf]
        M = lattice.matmul(B, T)
        return FractionalIdeal.from_lattice_rows(self.F, lattice.dual_basis(M))

    def gram(self, weight=None):
        """Gram matrix of ``(x, y) -> Tr(weight x y)`` on the ideal basis."""
        b = self.basis
        if weight is None:
            return [[(x * y).trace() for y in b] for x in b]
        return [[(weight * x * y).trace() for y in b] for x in b]

    def short_elements(self, bound, weight=None, center=None, limit=10**6):
        """Elements x with Tr(weight (x - center)^2) <= bound, exactly enumerated.

        ``weight`` must be totally positive so that the form is definite.
        Yields ``(x, value)``.
        """
        G = self.gram(weight)
        c = self.coordinates(center) if center is not None else None
        for z, val in lattice.enumerate_ellipsoid(G, bound, c, limit):
            yield self.element(z), val

    def __repr__(self):
        return f"Ideal({[list(map(str, b.c)) for b in self.basis]})"

    def sort_key(self):
        return (self.den, self.hnf)


def totally_positive_elements(I, T, limit=10**6):
    """``{x in I : x >> 0, Tr(x) <= T}`` together with 0, sorted by trace then embeddings.

    A totally positive x with Tr(x) <= T satisfies Tr(x^2) <= T^2, so the
    definite enumeration of that ellipsoid is an exact superset.
    """
    T = Fraction(T)
    if T < 0:
        return []
    out = [I.F.zero]
    for x, _ in I.short_elements(T * T, limit=limit):
        if not x.is_zero() and x.trace() <= T and x.is_totally_positive():
            out.append(x)
    out.sort(key=lambda x: x.sort_key())
    return out


def ideal(F, *gens):
    return FractionalIdeal.from_generators(F, list(gens))


def multiply(I, J):
    return I * J


def invert(I):
    return I.inverse()


def norm(I):
    return I.norm()


def trace_dual(I):
    return I.trace_dual()


@lru_cache(maxsize=None)
def different(F):
    """The different, as the inverse of the trace dual of the maximal order."""
    return FractionalIdeal.unit(F).trace_dual().inverse()


@lru_cache(maxsize=None)
def inverse_different(F):
    return FractionalIdeal.unit(F).trace_dual()


def is_coprime(I, J):
    return (I + J) == FractionalIdeal.unit(I.F)


def _rational_ideal(F, r):
    return FractionalIdeal.from_generators(F, [F(r)])


def divides(I, J):
    """True iff I divides J, i.e. J is contained in I."""
    return I.contains_ideal(J)


def check_NT(n, c):
    """Torsion-freeness hypothesis for the level ``n`` and polarization ideal ``c``.

    ``n`` must be coprime to N(c d) (numerator and denominator) and must
    divide neither 2 nor 3.
    """
    F = n.F
    if not n.is_integral():
        raise ValueError("the level ideal must be integral")
    N = (c * different(F)).norm()
    for m in (N.numerator, N.denominator):
        if m != 1 and not is_coprime(n, _rational_ideal(F, m)):
            return False
    for p in (2, 3):
        if divides(n, _rational_ideal(F, p)):
            return False
    return True


def congruence_units(F, modulus, data=None):
    """Attach generators of the units congruent to 1 mod ``modulus``.

    The unit group is {+-1} x <eps_0>; its congruence subgroup is generated
    by -1 (when 2 lies in the modulus) and the least power +-eps_0^k that is
    congruent to 1.
    """
    data = data or totally_positive_square_units(F)
    eps = data.fundamental
    gens = []
    if F(2) in modulus:
        gens.append(F(-1))
    x = eps
    k = 1
    limit = int(modulus.norm()) ** 2 + 2
    while True:
        if (x - 1) in modulus:
            gens.append(x)
            break
        if (x + 1) in modulus:
            gens.append(-x)
            break
        x = x * eps
        k += 1
        if k > limit:
            raise BoundExceeded("no unit power found congruent to +-1")
    return UnitGroupData(data.fundamental, data.totally_positive, data.squares,
                         modulus=modulus, congruence=tuple(gens))


def minimal_norm_elements(I, data=None, limit=10**6):
    """Nonzero elements of I of least |norm|, up to units, certified.

    Every unit orbit meets the region |x_1/x_2| in [1/eps_0, eps_0], where
    Tr(x^2) <= |N(x)| Tr(eps_0^2); the search grows the radius until the best
    norm found is covered by that bound. Returns ``(norm, elements)`` with
    elements up to sign from that balanced region.
    """
    data = data or totally_positive_square_units(I.F)
    c = (data.fundamental ** 2).trace()
    R = I.norm() * c
    while True:
        best, found = None, []
        for x, val in I.short_elements(R, limit=limit):
            if x.is_zero():
                continue
            n = abs(x.norm())
            if best is None or n < best:
                best, found = n, [x]
            elif n == best:
                found.append(x)
        if best is not None and R >= best * c:
            return best, found
        R *= 2


def is_principal(I, data=None):
    """Return a generator of I, or None. Exact: uses the certified minimal-norm search."""
    n, elems = minimal_norm_elements(I, data)
    if n == I.norm():
        return min(elems, key=lambda x: (x.sort_key()[1:], x.c))
    return None


def minkowski_floor(F):
    """floor of the Minkowski bound sqrt(disc)/2 for a real quadratic field."""
    F._require_quadratic()
    return isqrt(F.discriminant // 4)


def integral_ideals_of_norm(F, N):
    """Primitive integral ideals of norm N (HNF enumeration with an o-module check)."""
    out = []
    for a in range(1, N + 1):
        if N % a:
            continue
        c = N // a
        for b in range(c):
            if gcd(gcd(a, b), c) != 1:
                continue
            L = FractionalIdeal(F, ((a, b), (0, c)), 1)
            if all((x * w) in L for x in L.basis for w in F.basis):
                out.append(L)
    return out


def class_representatives(F, bound=1000):
    """One integral ideal per ideal class, searching norms up to the Minkowski bound."""
    M = minkowski_floor(F)
    if M > bound:
        raise BoundExceeded(f"Minkowski bound {M} exceeds configured limit {bound}")
    reps = [FractionalIdeal.unit(F)]
    data = totally_positive_square_units(F)
    for N in range(2, M + 1):
        for J in integral_ideals_of_norm(F, N):
            if not any(is_principal(J / R, data) is not None for R in reps):
                reps.append(J)
    return reps


def ideal_class_index(I, reps, data=None):
    for i, R in enumerate(reps):
        if is_principal(I / R, data) is not None:
            return i
    raise ValueError("ideal not equivalent to any representative")


def intersect(I, J):
    """I cap J, computed as the trace dual of I* + J*."""
    return (I.trace_dual() + J.trace_dual()).trace_dual()


def span(F, pairs):
    """The lattice sum of x * I over the pairs (x, I) with x nonzero."""
    rows = [(x * b).c for x, I in pairs if not x.is_zero() for b in I.basis]
    if not rows:
        raise ValueError("all generators vanish")
    return FractionalIdeal.from_lattice_rows(F, rows)


def random_element(I, rng, bound):
    """Element of I with basis coefficients drawn uniformly from [-bound, bound]."""
    return I.element([rng.randint(-bound, bound) for _ in range(I.F.degree)])
