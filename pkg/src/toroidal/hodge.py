"""Hodge-Tate weight combinatorics attached to an algebraic weight kappa.

Subsets J of the embeddings correspond to Weyl elements eps_J = (-1_J, 1_Jbar).
For each J,

    p(J) = sum_{tau in J} (k0 - m_tau - 1) tau + sum_{tau not in J} m_tau tau,

and the integers |p(J)| (with multiplicity) are the candidate Hodge-Tate
weights.
"""
from collections import Counter
from fractions import Fraction
from itertools import combinations

from .weights import AlgebraicWeight


def _weight(kappa):
    return kappa if isinstance(kappa, AlgebraicWeight) else AlgebraicWeight(tuple(kappa))


def subsets(d):
    """All subsets of range(d) as frozensets, by size then lexicographically."""
    return [frozenset(c) for r in range(d + 1) for c in combinations(range(d), r)]


def complement(J, d):
    return frozenset(range(d)) - frozenset(J)


def p_of_J(kappa, J):
    w = _weight(kappa)
    J = frozenset(J)
    return tuple(w.k0 - m - 1 if tau in J else m for tau, m in enumerate(w.m))


def size(p):
    return sum(p)


def hodge_tate_multiset(kappa):
    """Sorted list of |p(J)| over all subsets J."""
    w = _weight(kappa)
    return sorted(size(p_of_J(w, J)) for J in subsets(w.d))


def quadratic_multiset(kappa):
    """The closed form {m, k0-m-1, k0+m-1, 2k0-m-2} for d = 2, m taken at the smaller weight."""
    w = _weight(kappa)
    if w.d != 2:
        raise ValueError("the closed form is for quadratic fields")
    m, k0 = max(w.m), w.k0
    return sorted([m, k0 - m - 1, k0 + m - 1, 2 * k0 - m - 2])


def verify_weight_symmetry(kappa):
    """|p(J)| + |p(Jbar)| = (k0 - 1) d for all J."""
    w = _weight(kappa)
    target = (w.k0 - 1) * w.d
    return all(size(p_of_J(w, J)) + size(p_of_J(w, complement(J, w.d))) == target
               for J in subsets(w.d))


def character_pairing(kappa, J):
    """-(eps_J(n+t) - t, n0)(H) with H = diag(0, -1) at every embedding.

    The character of (n'; n0) sends diag(a, d) to a^{(n0 t + n')/2}
    d^{(n0 t - n')/2}; its derivative at H is -sum (n0 - n'_tau)/2.
    """
    w = _weight(kappa)
    J = frozenset(J)
    twisted = [-(n + 1) - 1 if tau in J else n for tau, n in enumerate(w.n)]
    return sum(Fraction(w.n0 - x, 2) for x in twisted)


def bgg_terms(kappa, i):
    """Terms (J, |p(J)|, |J|) of the BGG complex in filtration degree i.

    Each term is checked against the character pairing.
    """
    w = _weight(kappa)
    out = []
    for J in subsets(w.d):
        h = size(p_of_J(w, J))
        if character_pairing(w, J) != h:
            raise AssertionError(f"character pairing disagrees with |p(J)| at J = {sorted(J)}")
        if h == i:
            out.append((tuple(sorted(J)), h, len(J)))
    return out


def bgg_table(kappa):
    w = _weight(kappa)
    return {i: bgg_terms(w, i) for i in sorted(set(hodge_tate_multiset(w)))}


def weight_bound_check(kappa, j):
    """{|p(J)| : |J| <= j}."""
    w = _weight(kappa)
    if not 0 <= j <= w.d:
        raise ValueError("j must lie between 0 and d")
    return {size(p_of_J(w, J)) for J in subsets(w.d) if len(J) <= j}


def multiset_counter(kappa):
    return Counter(hodge_tate_multiset(kappa))
