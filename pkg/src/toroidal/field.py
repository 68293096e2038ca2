"""Exact arithmetic in totally real number fields.

Elements are stored by rational coordinates over a fixed integral basis of
the ring of integers. Everything is implemented for real quadratic fields;
higher degree fields can be described by a multiplication table, which is
enough for ring arithmetic, traces and norms but not for embeddings or unit
computations.
"""
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property, lru_cache, total_ordering
from math import isqrt

from . import lattice
from .errors import UnsupportedDegree


def _squarefree(n):
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1
    return True


@dataclass(frozen=True)
class FieldDescriptor:
    """A totally real field given by structure constants on an integral basis.

    ``table[i][j]`` is the coordinate tuple of ``w_i * w_j``. For a real
    quadratic field ``D`` is the squarefree radicand and the basis is
    ``(1, sqrt D)`` or ``(1, (1 + sqrt D)/2)``.
    """

    degree: int
    table: tuple
    D: int = None
    names: tuple = dc_field(default=(), compare=False)

    def __post_init__(self):
        if self.degree < 2:
            raise ValueError("the base field must be different from Q")

    @classmethod
    def quadratic(cls, D):
        D = int(D)
        if not _squarefree(D):
            raise ValueError(f"D = {D} must be a squarefree integer > 1")
        if D % 4 == 1:
            # omega^2 = omega + (D - 1)/4
            w2 = (Fraction((D - 1) // 4), Fraction(1))
            names = ("1", "(1+sqrt(%d))/2" % D)
        else:
            w2 = (Fraction(D), Fraction(0))
            names = ("1", "sqrt(%d)" % D)
        one, w = (Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))
        return cls(2, ((one, w), (w, w2)), D, names)

    # -- basic elements -------------------------------------------------
    def __call__(self, *coords):
        if len(coords) == 1 and isinstance(coords[0], (list, tuple)):
            coords = tuple(coords[0])
        if len(coords) == 1:
            return self.rational(coords[0])
        return FieldElement(self, coords)

    def rational(self, r):
        return FieldElement(self, (r,) + (0,) * (self.degree - 1))

    @property
    def zero(self):
        return self.rational(0)

    @property
    def one(self):
        return self.rational(1)

    @property
    def basis(self):
        return tuple(FieldElement(self, tuple(int(i == j) for j in range(self.degree)))
                     for i in range(self.degree))

    def from_surd(self, a, b):
        """The quadratic field element ``a + b*sqrt(D)``."""
        self._require_quadratic()
        a, b = Fraction(a), Fraction(b)
        if self.D % 4 == 1:
            # (1 + sqrt D)/2 = omega, so sqrt D = 2 omega - 1
            return FieldElement(self, (a - b, 2 * b))
        return FieldElement(self, (a, b))

    def sqrt_D(self):
        return self.from_surd(0, 1)

    # -- invariants -----------------------------------------------------
    @cached_property
    def trace_form(self):
        """Gram matrix Tr(w_i w_j) of the integral basis."""
        b = self.basis
        return [[(x * y).trace() for y in b] for x in b]

    @cached_property
    def discriminant(self):
        return int(lattice.det(self.trace_form))

    def _require_quadratic(self):
        if self.degree != 2 or self.D is None:
            raise UnsupportedDegree("only real quadratic fields are supported here")

    def __repr__(self):
        if self.D is not None:
            return f"Q(sqrt({self.D}))"
        return f"FieldDescriptor(degree={self.degree})"

    def to_json(self):
        if self.D is None:
            return {"degree": self.degree,
                    "table": [[[str(c) for c in e] for e in row] for row in self.table]}
        return {"degree": 2, "D": self.D}


@lru_cache(maxsize=None)
def QuadraticField(D):
    return FieldDescriptor.quadratic(D)


@total_ordering
class EmbeddingValue:
    """Exact real number ``a + b sqrt(D)``: the image of an element under an embedding."""

    __slots__ = ("a", "b", "D")

    def __init__(self, a, b, D):
        self.a, self.b, self.D = Fraction(a), Fraction(b), D

    def sign(self):
        a, b = self.a, self.b
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        return sa if a * a > b * b * self.D else sb

    def _diff(self, other):
        if isinstance(other, EmbeddingValue):
            return EmbeddingValue(self.a - other.a, self.b - other.b, self.D)
        return EmbeddingValue(self.a - Fraction(other), self.b, self.D)

    def __eq__(self, other):
        try:
            return self._diff(other).sign() == 0
        except (TypeError, ValueError):
            return NotImplemented

    def __lt__(self, other):
        return self._diff(other).sign() < 0

    def __hash__(self):
        return hash((self.a, self.b, self.D))

    def __float__(self):
        return float(self.a) + float(self.b) * self.D ** 0.5

    def __repr__(self):
        return f"{float(self):.6g}"


class FieldElement:
    """Element of a totally real field, immutable and hashable."""

    __slots__ = ("F", "c", "_hash")

    def __init__(self, F, coords):
        if len(coords) != F.degree:
            raise ValueError("wrong number of coordinates")
        object.__setattr__(self, "F", F)
        object.__setattr__(self, "c", tuple(Fraction(x) for x in coords))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *args):
        raise AttributeError("FieldElement is immutable")

    # -- ring structure ---------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.F is not self.F and other.F != self.F:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.F.rational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.F, tuple(x + y for x, y in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.F, tuple(-x for x in self.c))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.F, tuple(x - y for x, y in zip(self.c, o.c)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.F, tuple(x * other for x in self.c))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        F = self.F
        if F.degree == 2:
            (p1, q1), (p2, q2) = self.c, o.c
            u, v = F.table[1][1]
            qq = q1 * q2
            return FieldElement(F, (p1 * p2 + qq * u, p1 * q2 + q1 * p2 + qq * v))
        out = [Fraction(0)] * F.degree
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    if b:
                        ab = a * b
                        for k, t in enumerate(F.table[i][j]):
                            if t:
                                out[k] += ab * t
        return FieldElement(F, out)

    __rmul__ = __mul__

    def regular_matrix(self):
        """Matrix of multiplication by self; column j holds the coordinates of self*w_j."""
        cols = [(self * w).c for w in self.F.basis]
        return lattice.transpose(cols)

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.F.degree == 2:
            return self.conjugate() * (1 / self.norm())
        # solve self * x = 1
        x = lattice.solve_rational(self.regular_matrix(), self.F.one.c)
        return FieldElement(self.F, x)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = self.F.one, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.F == other.F and self.c == other.c
        if isinstance(other, (int, Fraction)):
            return self.c[0] == other and not any(self.c[1:])
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.F.D, self.c))
            object.__setattr__(self, "_hash", h)
        return h

    def is_zero(self):
        return not any(self.c)

    def is_rational(self):
        return not any(self.c[1:])

    def is_integral(self):
        return all(x.denominator == 1 for x in self.c)

    # -- invariants -------------------------------------------------------
    def trace(self):
        F = self.F
        if F.degree == 2:
            return 2 * self.c[0] + self.c[1] * F.table[1][1][1]
        m = self.regular_matrix()
        return sum(m[i][i] for i in range(F.degree))

    def norm(self):
        F = self.F
        if F.degree == 2:
            p, q = self.c
            u, v = F.table[1][1]
            return p * p + p * q * v - q * q * u
        return lattice.det(self.regular_matrix())

    def conjugate(self):
        self.F._require_quadratic()
        return FieldElement(self.F, (self.trace(),) + (0,)) - self

    def surd(self):
        """Coordinates ``(a, b)`` with ``self = a + b sqrt(D)``."""
        self.F._require_quadratic()
        p, q = self.c
        if self.F.D % 4 == 1:
            return p + q / 2, q / 2
        return p, q

    def embeddings(self):
        """Exact images under the real embeddings, the one with sqrt(D) > 0 first."""
        a, b = self.surd()
        D = self.F.D
        return EmbeddingValue(a, b, D), EmbeddingValue(a, -b, D)

    def signs(self):
        return tuple(e.sign() for e in self.embeddings())

    def is_totally_positive(self):
        return all(s > 0 for s in self.signs())

    def __float__(self):
        return float(self.embeddings()[0])

    def __repr__(self):
        if self.F.degree == 2 and self.F.D is not None:
            a, b = self.surd()
            if b == 0:
                return str(a)
            return f"({a} + {b}*sqrt({self.F.D}))" if a else f"{b}*sqrt({self.F.D})"
        return f"FieldElement({', '.join(map(str, self.c))})"

    def sort_key(self):
        """Key ordering elements by trace, then by embeddings lexicographically."""
        return (self.trace(),) + self.embeddings()


def embeddings(x):
    return x.embeddings()


def is_totally_positive(x):
    return x.is_totally_positive()


def trace(x):
    return x.trace()


def norm(x):
    return x.norm()


def _unit_above_one(u):
    """The element of {u, -u, 1/u, -1/u} that exceeds 1 under the first embedding."""
    for v in (u, -u, u.inverse(), -u.inverse()):
        if v.embeddings()[0] > 1:
            return v
    raise ValueError("torsion unit")


def fundamental_unit(F):
    """Fundamental unit eps_0 > 1 of a real quadratic field.

    Searches the second integral-basis coordinate q = 1, 2, ... and solves
    the norm equation N(p + q w) = +-1 for p exactly; the first q with a
    solution belongs to eps_0 since that coordinate grows along the powers
    of eps_0.
    """
    F._require_quadratic()
    u, v = F.table[1][1]
    u, v = int(u), int(v)
    q = 0
    while True:
        q += 1
        # p^2 + v q p - (u q^2 + s) = 0 for s = +-1
        found = []
        for s in (1, -1):
            disc = v * v * q * q + 4 * (u * q * q + s)
            if disc < 0:
                continue
            r = isqrt(disc)
            if r * r != disc:
                continue
            for num in (-v * q + r, -v * q - r):
                if num % 2 == 0:
                    found.append(F(num // 2, q))
        if found:
            return min((_unit_above_one(x) for x in found), key=lambda x: x.embeddings()[0])


@dataclass(frozen=True)
class UnitGroupData:
    """Generators of the unit groups used by cusp and fan constructions.

    ``congruence`` lists generators of the units congruent to 1 modulo
    ``modulus`` when a modulus has been attached (see
    ``ideals.congruence_units``).
    """

    fundamental: FieldElement
    totally_positive: tuple
    squares: tuple
    modulus: object = None
    congruence: tuple = ()

    @property
    def square_generator(self):
        return self.squares[0]


def totally_positive_square_units(F):
    eps = fundamental_unit(F)
    sq = eps * eps
    if eps.norm() == 1:
        positive = (eps,)
    else:
        positive = (sq,)
    return UnitGroupData(fundamental=eps, totally_positive=positive, squares=(sq,))
