"""Cusps of the congruence groups Gamma_1(c, n) and their lattice data.

The groups are, with D = G_m,

    Gamma_0(c, n) = SL_2(F) cap ( o       c^*  )
                                 ( c d n   o    )

and Gamma_1(c, n) adds the condition d = 1 mod n. A cusp (a : c) gets the
ideals b = a o + c c^*, b' = a o + c (c n)^* and the lattice X = c b b';
the translations fixing the cusp form the dual lattice X^*.
"""
import random
from dataclasses import dataclass, field
from functools import lru_cache

from .field import FieldElement, totally_positive_square_units
from .ideals import (FractionalIdeal, class_representatives, congruence_units, different,
                     ideal_class_index, intersect, check_NT, minimal_norm_elements,
                     random_element, span)


@dataclass(frozen=True)
class Matrix2:
    a: FieldElement
    b: FieldElement
    c: FieldElement
    d: FieldElement

    @classmethod
    def of(cls, F, rows):
        """Build from ``[[a, b], [c, d]]`` with entries given as field elements, ints or coordinate lists."""
        def conv(x):
            if isinstance(x, FieldElement):
                return x
            if isinstance(x, (list, tuple)):
                return F(*x)
            return F(x)
        (a, b), (c, d) = rows
        return cls(conv(a), conv(b), conv(c), conv(d))

    @classmethod
    def identity(cls, F):
        return cls(F.one, F.zero, F.zero, F.one)

    @property
    def F(self):
        return self.a.F

    def det(self):
        return self.a * self.d - self.b * self.c

    def trace(self):
        return self.a + self.d

    def __matmul__(self, o):
        return Matrix2(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                       self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def inverse(self):
        det = self.det()
        return Matrix2(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = Matrix2.identity(self.F)
        for _ in range(k):
            out = out @ self
        return out

    def is_identity(self):
        return self == Matrix2.identity(self.F)

    def apply(self, x, y):
        """Image of the column vector (x, y)."""
        return self.a * x + self.b * y, self.c * x + self.d * y

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def to_json(self):
        return [[list(map(str, e.c)) for e in self.entries()[:2]],
                [list(map(str, e.c)) for e in self.entries()[2:]]]


@lru_cache(maxsize=64)
def _entry_ideals(c_ideal, n):
    # lattices for the entries: (diagonal, upper right, lower left)
    F = c_ideal.F
    return FractionalIdeal.unit(F), c_ideal.trace_dual(), c_ideal * different(F) * n


def in_gamma0(M, c_ideal, n):
    o, upper, lower = _entry_ideals(c_ideal, n)
    return (M.det() == M.F.one and M.a in o and M.d in o and M.b in upper and M.c in lower)


def in_gamma1(M, c_ideal, n):
    return in_gamma0(M, c_ideal, n) and (M.d - 1) in n


# -- cusp data ---------------------------------------------------------------

@dataclass(frozen=True)
class CuspData:
    a: FieldElement
    c: FieldElement
    c_ideal: FractionalIdeal
    level: FractionalIdeal
    b: FractionalIdeal
    b_prime: FractionalIdeal
    a_ideal: FractionalIdeal
    X: FractionalIdeal
    X_star: FractionalIdeal
    units: object = field(compare=False, default=None)
    subgroup_only: bool = True

    @property
    def unramified(self):
        return self.b == self.b_prime

    @property
    def F(self):
        return self.a.F

    def to_json(self):
        from .serialize import to_data
        return to_data(self)


def derive_cusp_data(a, c, c_ideal, n, data=None):
    """Ideals attached to the cusp (a : c) for Gamma_1(c_ideal, n).

    ``units`` records the congruence units o_n^x (units = 1 mod n), which is
    the finite-index subgroup of the cusp's unit group that is used for the
    coefficient relations; ``subgroup_only`` says that the full group was
    not determined, which is the case away from the cusp at infinity.
    """
    if a.is_zero() and c.is_zero():
        raise ValueError("(0 : 0) is not a cusp")
    F = a.F
    o = FractionalIdeal.unit(F)
    c_star = c_ideal.trace_dual()
    cn_star = (c_ideal * n).trace_dual()
    b = span(F, [(a, o), (c, c_star)])
    b_prime = span(F, [(a, o), (c, cn_star)])
    X = c_ideal * b * b_prime
    units = congruence_units(F, n, data)
    return CuspData(a, c, c_ideal, n, b, b_prime, b * c_ideal, X, X.trace_dual(), units,
                    subgroup_only=not c.is_zero())


def unipotent_lattice(a, c, c_ideal, n):
    """The t with I + t (a, c)^T (-c, a) in Gamma_1(c_ideal, n), from the entry conditions.

    The matrix is [[1 - tac, t a^2], [-t c^2, 1 + tac]]; its lower-right
    entry must be 1 mod n, which also makes the diagonal integral. This is
    computed independently of the ideals b, b' and must equal X^*.
    """
    F = a.F
    c_star = c_ideal.trace_dual()
    lower = c_ideal * different(F) * n
    parts = []
    if not a.is_zero():
        parts.append(c_star * (a * a).inverse())
    if not c.is_zero():
        parts.append(lower * (c * c).inverse())
    if not a.is_zero() and not c.is_zero():
        parts.append(n * (a * c).inverse())
    out = parts[0]
    for P in parts[1:]:
        out = intersect(out, P)
    return out


def scaled(cusp, lam):
    return derive_cusp_data(lam * cusp.a, lam * cusp.c, cusp.c_ideal, cusp.level)


def _size(a, c):
    return (a * a).trace() + (c * c).trace()


def normalize_cusp(a, c, c_ideal=None, data=None):
    """Canonical representative of the point (a : c) of P^1(F).

    Among the scalings with a, c in o the ideal a o + c c d has minimal norm
    exactly when the scaling factor has minimal norm in (a o + c o)^{-1}, so
    the choice does not depend on c. Such a factor is found by a certified
    search; then the unit multiple of least size Tr(a^2) + Tr(c^2) is taken
    (the size is convex along the powers of eps_0) with sign making the
    first nonzero coordinate positive, ties broken by coordinates.
    """
    F = a.F
    data = data or totally_positive_square_units(F)
    o = FractionalIdeal.unit(F)
    J = span(F, [(a, o), (c, o)]).inverse()
    _, lams = minimal_norm_elements(J, data)
    eps = data.fundamental
    cands = []
    for lam in lams:
        best = [lam]
        for step in (eps, eps.inverse()):
            x = lam * step
            while _size(x * a, x * c) <= _size(best[-1] * a, best[-1] * c):
                best.append(x)
                x = x * step
        cands.extend(best)
    out = []
    for lam in cands:
        x, y = lam * a, lam * c
        first = next(z for z in x.c + y.c if z)
        if first < 0:
            x, y = -x, -y
        out.append((_size(x, y), x.c, y.c, x, y))
    best = min(out, key=lambda t: t[:3])
    return best[3], best[4]


def sample_cusps(F, count, seed, bound=3):
    """Distinct normalized cusps (a : c) with small integral coordinates, including infinity and 0."""
    rng = random.Random(seed)
    o = FractionalIdeal.unit(F)
    seen = []
    pts = [(F.one, F.zero), (F.zero, F.one)]
    tries = 0
    while len(pts) < count:
        tries += 1
        if tries > 100 * count:
            break
        a, c = random_element(o, rng, bound), random_element(o, rng, bound)
        if not (a.is_zero() and c.is_zero()):
            pts.append((a, c))
    for a, c in pts:
        if not any(a * y == c * x for x, y in seen):
            seen.append((a, c))
    return seen


def classify_cusps(c_ideal, n, cusps, reps=None):
    """Ideal class of a o + c c^* for each cusp, as an index into the class representatives."""
    F = c_ideal.F
    reps = reps if reps is not None else class_representatives(F)
    data = totally_positive_square_units(F)
    o = FractionalIdeal.unit(F)
    c_star = c_ideal.trace_dual()
    out = {}
    for a, c in cusps:
        out[(a, c)] = ideal_class_index(span(F, [(a, o), (c, c_star)]), reps, data)
    return out


# -- torsion -----------------------------------------------------------------

def torsion_probe(M, max_power=24):
    """Least k <= max_power with M^k = I, or None."""
    P = M
    for k in range(1, max_power + 1):
        if P.is_identity():
            return k
        P = P @ M
    return None


def random_group_element(c_ideal, n, rng, entry_bound=3, length=4, data=None):
    """Product of elementary matrices of Gamma_1(c_ideal, n) with small coefficients.

    Factors are [[1, b], [0, 1]] with b in c^*, [[1, 0], [g, 1]] with g in
    c d n, and diag(u, 1/u) with u a generator of the units = 1 mod n.
    """
    F = c_ideal.F
    c_star = c_ideal.trace_dual()
    lower = c_ideal * different(F) * n
    units = (data or congruence_units(F, n)).congruence
    M = Matrix2.identity(F)
    for _ in range(length):
        kind = rng.randrange(3 if units else 2)
        if kind == 0:
            E = Matrix2(F.one, random_element(c_star, rng, entry_bound), F.zero, F.one)
        elif kind == 1:
            E = Matrix2(F.one, F.zero, random_element(lower, rng, entry_bound), F.one)
        else:
            u = rng.choice(units) ** rng.choice((-1, 1))
            E = Matrix2(u, F.zero, F.zero, u.inverse())
        M = M @ E
    return M


@dataclass(frozen=True)
class TorsionReport:
    trials: int
    seed: int
    torsion: tuple
    nt: bool

    @property
    def torsion_free(self):
        return not self.torsion


def nt_random_torsion_search(c_ideal, n, trials=1000, entry_bound=3, seed=0, max_power=24):
    """Sample group elements and record those of finite order other than the identity."""
    rng = random.Random(seed)
    data = congruence_units(c_ideal.F, n)
    found = []
    for _ in range(trials):
        M = random_group_element(c_ideal, n, rng, entry_bound, rng.randint(1, 4), data)
        if not in_gamma1(M, c_ideal, n):
            raise AssertionError("sampled matrix left the group")
        if M.is_identity():
            continue
        k = torsion_probe(M, max_power)
        if k is not None:
            found.append((M, k))
    return TorsionReport(trials, seed, tuple(found), check_NT(n, c_ideal))


def _small_traces(F):
    """Integral t with |tau(t)| < 2 at every embedding, i.e. traces of finite-order elements."""
    o = FractionalIdeal.unit(F)
    out = []
    for t, _ in o.short_elements(8):
        if all(-2 < e < 2 for e in t.embeddings()):
            out.append(t)
    return sorted(out, key=lambda t: t.sort_key())


def find_torsion_witness(c_ideal, n, bound=3, max_power=24):
    """A non-identity element of finite order in Gamma_1(c_ideal, n), or None.

    Tries -I, then matrices [[t - d, b], [c, d]] with t a possible trace of a
    torsion element, b in c^* and d in 1 + n with small coefficients, where c
    is forced by the determinant.
    """
    F = c_ideal.F
    if F(2) in n:
        return Matrix2(-F.one, F.zero, F.zero, -F.one)
    c_star = c_ideal.trace_dual()
    o = FractionalIdeal.unit(F)
    rng_b = [c_star.element((i, j)) for i in range(-bound, bound + 1) for j in range(-bound, bound + 1)
             if i or j]
    rng_d = [F.one + n.element((i, j)) for i in range(-bound, bound + 1) for j in range(-bound, bound + 1)]
    for t in _small_traces(F):
        for d in rng_d:
            a = t - d
            if a not in o:
                continue
            for b in rng_b:
                c = (a * d - 1) / b
                M = Matrix2(a, b, c, d)
                if in_gamma1(M, c_ideal, n) and torsion_probe(M, max_power):
                    return M
    return None
