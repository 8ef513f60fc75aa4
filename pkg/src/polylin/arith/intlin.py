"""Integer and rational linear algebra for lattice computations."""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .fields import QQ
from .matrix import ExactMatrix, kernel_basis, rank


def qrank(vectors, ncols=None) -> int:
    vectors = list(vectors)
    if not vectors:
        return 0
    return rank(ExactMatrix(vectors, ncols, QQ))


def qnullspace(rows, ncols: int):
    """Rational basis of {x : r.x = 0 for r in rows}."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    return kernel_basis(ExactMatrix(rows, ncols, QQ))


def qrowspace(vectors, ncols: int):
    """Rational basis of the span of ``vectors`` (RREF rows)."""
    vectors = list(vectors)
    if not vectors:
        return []
    m, piv = ExactMatrix(vectors, ncols, QQ).rref()
    return [m[i] for i in range(len(piv))]


def primitive(v):
    """Scale a rational vector to the primitive integer vector with the same direction."""
    v = [Fraction(x) for x in v]
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive scaling")
    return tuple(x // g for x in ints)


def content(v) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g


def hnf_basis(vectors, ncols: int):
    """Row-style Hermite basis of the lattice spanned by integer ``vectors``.

    Returns a list of linearly independent integer rows spanning the same
    lattice, in echelon form with positive pivots and reduced entries above
    them.  Deterministic for a given lattice.
    """
    rows = [list(map(int, v)) for v in vectors if any(v)]
    basis = []
    col = 0
    while rows and col < ncols:
        nz = [r for r in rows if r[col] != 0]
        zero = [r for r in rows if r[col] == 0]
        if not nz:
            col += 1
            continue
        # euclid on column entries
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            rest = []
            for r in nz[1:]:
                q = r[col] // piv[col]
                r2 = [a - q * b for a, b in zip(r, piv)]
                if r2[col] != 0:
                    rest.append(r2)
                elif any(r2):
                    zero.append(r2)
            nz = [piv] + rest
        piv = nz[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        basis.append(piv)
        rows = [r for r in zero if any(r)]
        col += 1
    # reduce entries above pivots
    pcols = [next(j for j, a in enumerate(b) if a != 0) for b in basis]
    for i in range(len(basis)):
        for k in range(i):
            pc = pcols[i]
            q = basis[k][pc] // basis[i][pc]
            if q:
                basis[k] = [a - q * b for a, b in zip(basis[k], basis[i])]
    return [tuple(b) for b in basis]


def solve_rational(basis, v, ncols: int):
    """Coefficients c with sum c_i basis_i = v, or None."""
    k = len(basis)
    if k == 0:
        return [] if not any(v) else None
    # columns are the basis vectors
    aug = ExactMatrix(
        [[basis[i][j] for i in range(k)] + [v[j]] for j in range(ncols)], k + 1, QQ
    )
    m, piv = aug.rref()
    if k in piv:
        return None
    coeffs = [Fraction(0)] * k
    for row, p in enumerate(piv):
        coeffs[p] = m[row][k]
    return coeffs


def lattice_coords(basis, v, ncols: int):
    """Integer coefficients of v in a lattice basis, or None if v is not in the lattice."""
    c = solve_rational(basis, v, ncols)
    if c is None or any(x.denominator != 1 for x in c):
        return None
    return [int(x) for x in c]


def int_det(m) -> int:
    n = len(m)
    if n == 0:
        return 1
    M = ExactMatrix(m, n, QQ)
    rows = [list(r) for r in M.rows]
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        det *= rows[c][c]
        for i in range(c + 1, n):
            f = rows[i][c] / rows[c][c]
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    assert det.denominator == 1
    return int(det)


__all__ = [
    "qrank",
    "qnullspace",
    "qrowspace",
    "primitive",
    "content",
    "hnf_basis",
    "solve_rational",
    "lattice_coords",
    "int_det",
]
