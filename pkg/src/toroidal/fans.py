"""Unit-invariant fans of the totally positive cone of a rank-2 lattice.

A fan is infinite but periodic: it is stored as a fundamental domain of
cones together with the integer matrix by which a totally positive unit
acts on lattice coordinates. The fundamental domain covers the sector
from an anchor ray (included) to its image under the unit (excluded).
"""
import math
import random
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import cached_property, cmp_to_key

from . import cones as cn
from .cones import Cone, det2
from .errors import BoundExceeded, NotCovered, UnsupportedDegree
from .field import totally_positive_square_units
from .ideals import FractionalIdeal, totally_positive_elements


def _mat_vec(m, v):
    return tuple(m[i][0] * v[0] + m[i][1] * v[1] for i in range(2))


def _mat_mul(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2))
                 for i in range(2))


def _mat_inv(m):
    d = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if abs(d) != 1:
        raise ValueError("symmetry matrix is not unimodular")
    return ((m[1][1] * d, -m[0][1] * d), (-m[1][0] * d, m[0][0] * d))


def _mat_pow(m, k):
    if k < 0:
        return _mat_pow(_mat_inv(m), -k)
    out = ((1, 0), (0, 1))
    for _ in range(k):
        out = _mat_mul(out, m)
    return out


def unit_matrix(X, u):
    """Integer matrix of multiplication by the unit u on the Z-basis of X (column convention)."""
    cols = [X.coordinates(u * b) for b in X.basis]
    if any(z.denominator != 1 for col in cols for z in col):
        raise ValueError("multiplication by u does not preserve the lattice")
    return tuple(tuple(int(cols[j][i]) for j in range(2)) for i in range(2))


@dataclass(frozen=True)
class Fan:
    lattice: FractionalIdeal
    unit: object
    symmetry: tuple
    anchor: tuple
    cones: tuple

    @property
    def orientation(self):
        """+1 if applying the symmetry turns counter-clockwise."""
        return 1 if det2(self.anchor, _mat_vec(self.symmetry, self.anchor)) > 0 else -1

    def translate(self, cone, k):
        return cone.transform(_mat_pow(self.symmetry, k))

    @cached_property
    def _near(self):
        # translates by eps^-1, 1, eps of the fundamental cones, tagged (index, k)
        return [(i, k, self.translate(c, k)) for k in (-1, 0, 1) for i, c in enumerate(self.cones)]

    @cached_property
    def _forms(self):
        # trace as a linear form and norm as a quadratic form in lattice coordinates
        # (scaled to integers; only signs matter)
        w0, w1 = self.lattice.basis
        t = (w0.trace(), w1.trace())
        n = (w0.norm(), (w0 * w1.conjugate()).trace(), w1.norm())
        st, sn = math.lcm(*(x.denominator for x in t)), math.lcm(*(x.denominator for x in n))
        return tuple(int(x * st) for x in t), tuple(int(x * sn) for x in n)

    def coords(self, x):
        """Lattice coordinates of a field element (or pass a coordinate vector through)."""
        if hasattr(x, "F"):
            return self.lattice.coordinates(x)
        return tuple(Fraction(t) for t in x)

    def window(self, k0=-1, k1=1):
        """All cones M^k sigma for sigma in the fundamental domain and k0 <= k <= k1."""
        seen, out = set(), []
        for k in range(k0, k1 + 1):
            for c in self.cones:
                t = self.translate(c, k)
                if t not in seen:
                    seen.add(t)
                    out.append(t)
        return out

    def fundamental_counts(self):
        counts = {}
        for c in self.cones:
            counts[c.dim] = counts.get(c.dim, 0) + 1
        return counts


def minimal_norm_positive(X, data=None, limit=10**6):
    """Totally positive element of X of least norm, certified.

    Ties are broken by least trace and then by the embeddings in
    lexicographic order. The least-trace points of each orbit of a totally
    positive unit eta lie where Tr(x)^2 <= N(x) (Tr(eta) + 2), so once the
    trace bound T satisfies T^2 >= N_best (Tr(eta) + 2) nothing smaller (or
    tied with smaller trace) can be missed. eta generates the totally
    positive units, which can be much smaller than the square generator.
    """
    data = data or totally_positive_square_units(X.F)
    eta = data.totally_positive[0]
    c = eta.trace() + 2
    T = Fraction(1)
    while True:
        pts = [x for x in totally_positive_elements(X, T, limit) if not x.is_zero()]
        if pts:
            best = min(pts, key=lambda x: (x.norm(), x.trace()) + x.embeddings())
            if T * T >= best.norm() * c:
                return best
        T *= 2


def _sector_sort(rays, s):
    return sorted(rays, key=cmp_to_key(lambda a, b: -s * (det2(a, b) > 0) + s * (det2(b, a) > 0)))


def _fundamental_cones(anchor, rays_between, image, s):
    """Zero cone, the rays from anchor to image (excluded) and the 2-cones between them."""
    chain = [anchor] + _sector_sort(rays_between, s) + [image]
    out = [Cone.zero()]
    for i in range(len(chain) - 1):
        out.append(Cone((chain[i],)))
        out.append(Cone((chain[i], chain[i + 1])))
    return tuple(out)


def build_unit_invariant_fan(F, X, data=None):
    """Complete fan of the totally positive cone of X, invariant under o^{x2}.

    The cones are the interiors of R+ eps^k xi0 + R+ eps^{k+1} xi0, the rays
    R+ eps^k xi0 and {0}, where eps generates the squares of units and xi0 is
    a totally positive element of least norm.
    """
    if F.degree != 2:
        raise UnsupportedDegree("fan construction needs d = 2")
    data = data or totally_positive_square_units(F)
    eps = data.square_generator
    xi0 = minimal_norm_positive(X, data)
    M = unit_matrix(X, eps)
    anchor = cn.primitive(X.coordinates(xi0))
    image = _mat_vec(M, anchor)
    s = 1 if det2(anchor, image) > 0 else -1
    return Fan(X, eps, M, anchor, _fundamental_cones(anchor, [], image, s))


def reduce_to_sector(fan, v):
    """Return (w, power) with w in the fundamental sector and v = eps^power w."""
    M, Minv = fan.symmetry, _mat_inv(fan.symmetry)
    s = fan.orientation
    a = fan.anchor
    b = _mat_vec(M, a)
    w = tuple(v)
    j = 0
    while s * det2(a, w) < 0:
        w = _mat_vec(M, w)
        j += 1
    while s * det2(b, w) >= 0:
        w = _mat_vec(Minv, w)
        j -= 1
    return w, -j


def _in_positive_cone(fan, v):
    """Totally positive or zero: for a quadratic field, positive trace and norm."""
    (t0, t1), (n00, n01, n11) = fan._forms
    if not any(v):
        return True
    return t0 * v[0] + t1 * v[1] > 0 and n00 * v[0] ** 2 + n01 * v[0] * v[1] + n11 * v[1] ** 2 > 0


def locate_all(fan, x):
    """All (fundamental index, power) whose cone contains the point; used for disjointness checks."""
    v = fan.coords(x)
    if not any(v):
        return [(i, 0) for i, c in enumerate(fan.cones) if c.dim == 0]
    if not _in_positive_cone(fan, v):
        raise ValueError("point is not totally positive")
    w, p = reduce_to_sector(fan, cn.primitive(v))
    return [(i, p + k) for i, k, c in fan._near if c.contains(w)]


def locate(fan, x):
    """Index of the fundamental cone containing the unit-reduced point, and the unit power.

    The point equals eps^power times a point of the returned cone.
    """
    hits = locate_all(fan, x)
    if not hits:
        raise NotCovered(f"point {tuple(map(str, fan.coords(x)))} is not covered", witness=x)
    return hits[0]


def random_positive_points(fan, n, seed, box=40, max_den=7, spread=3):
    """Random rational totally positive points.

    Half come from rejection sampling in a box of lattice coordinates, half
    are positive combinations a eps^i xi_0 + b eps^j xi_0 with |i|, |j| <= spread
    (these reach the thin parts of the cone that a box rarely hits).
    """
    rng = random.Random(seed)
    rays = [_mat_vec(_mat_pow(fan.symmetry, k), fan.anchor) for k in range(-spread, spread + 1)]
    out = []
    tries = 0
    while len(out) < n:
        if len(out) % 2:
            r1, r2 = rng.choice(rays), rng.choice(rays)
            a = Fraction(rng.randint(0, box), rng.randint(1, max_den))
            b = Fraction(rng.randint(0, box), rng.randint(1, max_den))
            v = tuple(a * x + b * y for x, y in zip(r1, r2))
            if any(v):
                out.append(v)
            continue
        tries += 1
        if tries > 1000 * n + 1000:
            raise BoundExceeded("rejection sampling of positive points failed")
        # positivity does not depend on the common denominator, so test the numerators
        z = (rng.randint(-box, box), rng.randint(-box, box))
        if any(z) and _in_positive_cone(fan, z):
            den = rng.randint(1, max_den)
            out.append((Fraction(z[0], den), Fraction(z[1], den)))
    return out


@dataclass(frozen=True)
class CompletenessReport:
    complete: bool
    samples: int
    seed: int
    witness: tuple = None


def is_complete_mod_units(fan, samples=10_000, seed=0):
    pts = random_positive_points(fan, samples, seed)
    for v in pts:
        if not locate_all(fan, v):
            return CompletenessReport(False, samples, seed, v)
    return CompletenessReport(True, samples, seed)


def is_smooth_fan(fan):
    return all(cn.is_smooth(c) for c in fan.cones)


def smooth_subdivide_equivariant(fan):
    """Insert the Hilbert-basis rays of every fundamental 2-cone and transport them by the units."""
    s = fan.orientation
    new_rays = set()
    for c in fan.cones:
        if c.dim == 2:
            for r in cn.hilbert_basis(c):
                if r not in c.rays:
                    new_rays.add(r)
    if not new_rays:
        return fan
    image = _mat_vec(fan.symmetry, fan.anchor)
    old_rays = [c.rays[0] for c in fan.cones if c.dim == 1 and c.rays[0] != fan.anchor]
    return replace(fan, cones=_fundamental_cones(fan.anchor, old_rays + sorted(new_rays), image, s))


def orbit_key(fan, cone):
    """Canonical representative of the orbit of a cone under the symmetry."""
    if cone.dim == 0:
        return cone
    a, b = (cone.rays + cone.rays)[:2] if cone.dim == 1 else cone.rays
    if cone.dim == 2:
        s = fan.orientation
        a = a if s * det2(a, b) > 0 else b
    w, p = reduce_to_sector(fan, a)
    return fan.translate(cone, -p)


def orbit_counts(fan, k0=-2, k1=2):
    """Number of orbits of cones of each dimension, counted on a window of translates."""
    keys = {}
    for c in fan.window(k0, k1):
        keys.setdefault(c.dim, set()).add(orbit_key(fan, c))
    return {d: len(v) for d, v in sorted(keys.items())}


def fan_contains_cone(fan, cone):
    return orbit_key(fan, cone) in set(orbit_key(fan, c) for c in fan.cones)


def check_invariance(fan):
    """Matrix-level invariance: M is multiplication by the unit and maps fan cones to fan cones."""
    if unit_matrix(fan.lattice, fan.unit) != fan.symmetry:
        return False
    M = fan.symmetry
    return all(fan_contains_cone(fan, c.transform(M)) and fan_contains_cone(fan, c.transform(_mat_inv(M)))
               for c in fan.window(-1, 1))


def check_fan_axioms(fan):
    """Closed under faces and pairwise disjoint on a window of translates."""
    win = fan.window(-2, 2)
    for c in win:
        for f in cn.faces(c):
            if not fan_contains_cone(fan, f):
                return False
    two = [c for c in win if c.dim == 2]
    for i, c1 in enumerate(two):
        for c2 in two[i + 1:]:
            # open 2-cones overlap iff some ray of one lies strictly inside the other
            # or they share both rays
            if set(c1.rays) == set(c2.rays):
                return False
            if any(c2.contains(r) for r in c1.rays) or any(c1.contains(r) for r in c2.rays):
                return False
    return True


def same_support(f1, f2, samples=1000, seed=0):
    """Do the two fans cover the same points (sampled) with the same ray orbits among f1's?"""
    for v in random_positive_points(f1, samples, seed):
        if bool(locate_all(f1, v)) != bool(locate_all(f2, v)):
            return False
    return True


def is_refinement(fine, coarse, samples=1000, seed=0):
    """Every cone of ``fine`` lies in the closure of a cone of ``coarse`` and the supports agree."""
    for c in fine.window(-1, 1):
        if not any(cn.admits_equivariant_morphism(c, d) for d in coarse.window(-2, 2)):
            return False
    return same_support(fine, coarse, samples, seed)
