"""Rational polyhedral cones in a rank-2 lattice.

A ``Cone`` stands for the relative interior of the cone spanned by its
rays; faces are again relatively open, so distinct faces are disjoint.
Only dimension 2 is supported.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import UnsupportedDegree


def primitive(v):
    """Primitive integer vector on the ray through a nonzero rational vector."""
    v = [Fraction(x) for x in v]
    if not any(v):
        raise ValueError("zero vector has no primitive representative")
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    w = [int(x * den) for x in v]
    g = 0
    for x in w:
        g = gcd(g, x)
    return tuple(x // g for x in w)


def det2(u, v):
    return u[0] * v[1] - u[1] * v[0]


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def _check_dim(v):
    if len(v) != 2:
        raise UnsupportedDegree("cone operations are implemented for d = 2 only")


@dataclass(frozen=True)
class Cone:
    """Relatively open strictly convex cone given by the rays of its closure."""

    rays: tuple

    def __post_init__(self):
        rays = tuple(sorted({primitive(r) for r in self.rays}))
        for r in rays:
            _check_dim(r)
        if len(rays) > 2:
            raise UnsupportedDegree("cones with more than two rays need d >= 3")
        if len(rays) == 2 and det2(*rays) == 0:
            # two distinct primitive collinear rays are opposite
            raise ValueError("cone contains a line")
        object.__setattr__(self, "rays", rays)

    @classmethod
    def zero(cls):
        return cls(())

    @property
    def dim(self):
        return len(self.rays)

    def oriented_rays(self):
        """The two rays ordered counter-clockwise (det > 0)."""
        a, b = self.rays
        return (a, b) if det2(a, b) > 0 else (b, a)

    def contains_closure(self, v):
        """Is the rational vector v in the closed cone?"""
        if not any(v):
            return True
        if self.dim == 0:
            return False
        if self.dim == 1:
            r = self.rays[0]
            return det2(r, v) == 0 and dot(r, v) > 0
        a, b = self.oriented_rays()
        return det2(a, v) >= 0 and det2(v, b) >= 0

    def contains(self, v):
        """Is v in the relative interior?"""
        if self.dim == 0:
            return not any(v)
        if not any(v):
            return False
        if self.dim == 1:
            return self.contains_closure(v)
        a, b = self.oriented_rays()
        return det2(a, v) > 0 and det2(v, b) > 0

    def transform(self, m):
        """Image under an integer matrix acting on column vectors."""
        return Cone(tuple(tuple(sum(m[i][j] * r[j] for j in range(2)) for i in range(2))
                          for r in self.rays))

    def to_json(self):
        return {"rays": [list(r) for r in self.rays]}


def faces(sigma):
    """All faces of sigma, smallest first, including {0} and sigma."""
    out = [Cone.zero()]
    if sigma.dim >= 1:
        out.extend(Cone((r,)) for r in sigma.rays)
    if sigma.dim == 2:
        out.append(sigma)
    return out


def orbit_dimension(tau, d=2):
    """Dimension of the torus orbit attached to the face tau."""
    return d - tau.dim


def is_smooth(sigma):
    """Do the rays extend to a basis of the lattice?"""
    if sigma.dim <= 1:
        return True
    return abs(det2(*sigma.rays)) == 1


def face_containing(sigma, v):
    """The face of sigma whose relative interior contains v."""
    for tau in faces(sigma):
        if tau.contains(v):
            return tau
    raise ValueError(f"{v} is not in the closure of {sigma}")


def same_limit_point(x1, x2, sigma):
    """Do the one-parameter subgroups of x1 and x2 have the same limit in S_sigma?"""
    return face_containing(sigma, x1) == face_containing(sigma, x2)


def admits_equivariant_morphism(sigma1, sigma2):
    """Is sigma1 contained in the closure of sigma2?"""
    return all(sigma2.contains_closure(r) for r in sigma1.rays)


def _ceil_div(a, b):
    return -((-a) // b)


def _solve_det_one(u):
    """Some integer p with det(u, p) = 1, for primitive u."""
    # extended Euclid on u = (x, y): find (a, b) with x b - y a = 1
    x, y = u
    old_r, r = x, y
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    # old_s x + old_t y = old_r = +-1
    g = old_r
    return (-old_t * g, old_s * g)


def hilbert_basis(sigma):
    """Minimal generators of the monoid of lattice points in the closed 2-cone.

    Walks the boundary of the convex hull of the nonzero lattice points from
    one ray to the other (the Hirzebruch-Jung staircase): each step takes
    the lattice point p with det(u, p) = 1 inside the cone that lies closest
    to the far ray.
    """
    if sigma.dim != 2:
        raise ValueError("hilbert_basis expects a two-dimensional cone")
    v1, v2 = sigma.oriented_rays()
    # start from the lexicographically smaller ray for a canonical order
    reverse = v2 < v1
    if reverse:
        v1, v2 = (v2[0], -v2[1]), (v1[0], -v1[1])
    chain = [v1]
    u = v1
    while u != v2:
        p0 = _solve_det_one(u)
        # p = p0 + t u; need det(p, v2) >= 0 and det(v1, p) >= 0
        t = _ceil_div(-det2(p0, v2), det2(u, v2))
        if u != v1:
            t = max(t, _ceil_div(-det2(v1, p0), det2(v1, u)))
        p = (p0[0] + t * u[0], p0[1] + t * u[1])
        chain.append(p)
        u = p
    if reverse:
        chain = [(x, -y) for x, y in chain]
    return chain


def dual_cone(sigma):
    """Closed dual cone, returned as a Cone (2-dim) or as a half-plane marker.

    For a ray r the dual is the half-plane {<., r> >= 0}; it is returned as
    ``("halfplane", r)``.
    """
    if sigma.dim == 2:
        a, b = sigma.oriented_rays()
        # <n1, v> = det(a, v), <n2, v> = det(v, b)
        return Cone(((-a[1], a[0]), (b[1], -b[0])))
    if sigma.dim == 1:
        return ("halfplane", sigma.rays[0])
    raise ValueError("the dual of {0} is the whole plane")


def dual_monoid_generators(sigma):
    """Hilbert basis of the lattice points of the dual cone.

    For a ray r the dual monoid is generated by +-w (w primitive orthogonal
    to r) and the shortest lattice vector v with <v, r> = 1.
    """
    if sigma.rays:
        _check_dim(sigma.rays[0])
    dual = dual_cone(sigma)
    if isinstance(dual, Cone):
        return hilbert_basis(dual)
    r = dual[1]
    w = (-r[1], r[0])
    # det(r, p) = 1 means <(p_y, -p_x), r> = 1
    p = _solve_det_one(r)
    v0 = (p[1], -p[0])
    # shortest representative v0 + k w
    k0 = -Fraction(dot(v0, w), dot(w, w))
    v = min(((v0[0] + k * w[0], v0[1] + k * w[1]) for k in (int(k0) - 1, int(k0), int(k0) + 1)),
            key=lambda v: (dot(v, v), v))
    w_neg = (-w[0], -w[1])
    return [v, max(w, w_neg), min(w, w_neg)]
