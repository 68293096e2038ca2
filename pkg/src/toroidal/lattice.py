"""Exact integer and rational linear algebra.

Hermite normal forms, dual lattices and enumeration of lattice points in
ellipsoids (Fincke-Pohst with exact rational arithmetic). Matrices are
lists of rows; lattices are spanned by the rows.
"""
from fractions import Fraction
from math import gcd, isqrt

from .errors import BoundExceeded


def _lcm(a, b):
    return a * b // gcd(a, b)


def det(m):
    """Exact determinant by fraction-free Gaussian elimination."""
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    sign = 1
    for i in range(n):
        piv = next((r for r in range(i, n) if a[r][i] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != i:
            a[i], a[piv] = a[piv], a[i]
            sign = -sign
        for r in range(i + 1, n):
            f = a[r][i] / a[i][i]
            if f:
                for c in range(i, n):
                    a[r][c] -= f * a[i][c]
    out = Fraction(sign)
    for i in range(n):
        out *= a[i][i]
    return out


def inverse(m):
    """Inverse of a square rational matrix (Gauss-Jordan)."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for i in range(n):
        piv = next((r for r in range(i, n) if a[r][i] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[i], a[piv] = a[piv], a[i]
        p = a[i][i]
        a[i] = [x / p for x in a[i]]
        for r in range(n):
            if r != i and a[r][i] != 0:
                f = a[r][i]
                a[r] = [x - f * y for x, y in zip(a[r], a[i])]
    return [row[n:] for row in a]


def transpose(m):
    return [list(col) for col in zip(*m)]


def matmul(a, b):
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def solve_rational(a, b):
    """One solution x of a x = b (a is m x n), or None if inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    rows = [[Fraction(x) for x in row] + [Fraction(v)] for row, v in zip(a, b)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [x / p for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if rows[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = rows[i][n]
    return x


def hnf(rows):
    """Row-style Hermite normal form of an integer matrix.

    Returns the nonzero rows of the upper-triangular HNF: pivots are
    positive and every entry above a pivot is reduced into
    ``[0, pivot)``. The row span is unchanged.
    """
    a = [list(map(int, r)) for r in rows if any(r)]
    if not a:
        return []
    ncols = len(a[0])
    out = []
    for c in range(ncols):
        nz = [r for r in a if r[c] != 0]
        rest = [r for r in a if r[c] == 0]
        if not nz:
            a = rest
            continue
        # gcd-combine the column-c entries into a single pivot row
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[c]))
            p = nz[0]
            new = [p]
            for r in nz[1:]:
                q = r[c] // p[c]
                r2 = [x - q * y for x, y in zip(r, p)]
                if r2[c] != 0:
                    new.append(r2)
                elif any(r2):
                    rest.append(r2)
            nz = new
        p = nz[0]
        if p[c] < 0:
            p = [-x for x in p]
        out.append(p)
        a = rest
    # reduce entries above pivots
    for i in range(len(out)):
        c = next(j for j, x in enumerate(out[i]) if x != 0)
        piv = out[i][c]
        for k in range(i):
            q = out[k][c] // piv
            if q:
                out[k] = [x - q * y for x, y in zip(out[k], out[i])]
    return out


def rational_hnf(rows):
    """Canonical form ``(H, den)`` of the lattice spanned by rational rows.

    ``den`` is the least positive integer with ``den * L`` integral and
    ``H`` is the HNF of ``den * L``.
    """
    den = 1
    for r in rows:
        for x in r:
            den = _lcm(den, Fraction(x).denominator)
    ints = [[int(Fraction(x) * den) for x in r] for r in rows]
    return hnf(ints), den


def dual_basis(rows):
    """Basis of ``{x : B x in Z^n}`` for a square nonsingular rational ``B``."""
    return transpose(inverse(rows))


def _floor_sqrt(q):
    """floor(sqrt(q)) for a nonnegative Fraction."""
    q = Fraction(q)
    return isqrt(q.numerator * q.denominator) // q.denominator


def ldl(gram):
    """Decompose a positive definite form as sum d_i (y_i + sum_j m_ij y_j)^2."""
    n = len(gram)
    q = [[Fraction(x) for x in row] for row in gram]
    d = [Fraction(0)] * n
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = q[i][i]
        if d[i] <= 0:
            raise ValueError("form is not positive definite")
        for j in range(i + 1, n):
            mu[i][j] = q[i][j] / d[i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[i][k] * q[i][l] / d[i]
                q[l][k] = q[k][l]
    return d, mu


def quadratic_value(gram, y):
    return sum(gram[i][j] * y[i] * y[j] for i in range(len(y)) for j in range(len(y)))


def enumerate_ellipsoid(gram, bound, center=None, limit=10**6):
    """All integer vectors x with (x-c)^T G (x-c) <= bound.

    Exact Fincke-Pohst enumeration; yields ``(x, value)`` pairs. Raises
    BoundExceeded once more than ``limit`` points have been produced.
    """
    n = len(gram)
    c = [Fraction(v) for v in center] if center is not None else [Fraction(0)] * n
    bound = Fraction(bound)
    if bound < 0:
        return
    d, mu = ldl(gram)
    x = [0] * n
    count = 0

    def rec(i, remaining):
        nonlocal count
        if i < 0:
            count += 1
            if count > limit:
                raise BoundExceeded(f"more than {limit} lattice points within bound {bound}")
            yield tuple(x), bound - remaining
            return
        t = sum(mu[i][j] * (x[j] - c[j]) for j in range(i + 1, n))
        z = c[i] - t
        r2 = remaining / d[i]
        s = _floor_sqrt(r2)
        fz = z.numerator // z.denominator
        for xi in range(fz - s - 1, fz + s + 2):
            dev = (xi - z) ** 2
            if dev <= r2:
                x[i] = xi
                yield from rec(i - 1, remaining - d[i] * dev)
        x[i] = 0

    yield from rec(n - 1, bound)
