"""The graded semigroup S_P and the toric ideal of k[P], degree by degree.

Nothing here uses Groebner bases.  The degree-e piece of the toric ideal is
spanned by differences of degree-e monomials with equal lattice sum, so its
dimension is ``C(m+e-1, e) - hilbert(P, e)``; generation in degree <= D is a
rank computation on products of low-degree relations with monomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb

from .arith.fields import QQ
from .arith.intlin import lattice_coords, qrank
from .arith.matrix import ExactMatrix, rank
from .geometry import LatticePolytope, dilate


@dataclass(frozen=True, order=True)
class GradedMonomial:
    vector: tuple
    degree: int


@dataclass(frozen=True)
class BinomialRelation:
    """x^left - x^right, both sides multisets (sorted tuples) of lattice points."""

    left: tuple
    right: tuple

    @property
    def degree(self):
        return len(self.left)

    def exponent_difference(self, P: LatticePolytope):
        v = [0] * P.n_points
        for x in self.left:
            v[P.index(x)] += 1
        for x in self.right:
            v[P.index(x)] -= 1
        return v

    def to_json(self):
        return {"degree": self.degree, "left": [list(x) for x in self.left],
                "right": [list(x) for x in self.right]}

    @classmethod
    def from_json(cls, data):
        return cls(tuple(tuple(x) for x in data["left"]), tuple(tuple(x) for x in data["right"]))


def _vsum(points, d):
    s = [0] * d
    for p in points:
        for i, x in enumerate(p):
            s[i] += x
    return tuple(s)


@lru_cache(maxsize=None)
def fibers(P: LatticePolytope, e: int):
    """Degree-e monomials grouped by lattice sum.

    Returns a dict ``sum -> [multiset, ...]`` (multisets as sorted tuples of
    lattice-point indices), both levels in lex scan order.
    """
    out = {}
    d = P.ambient_dim
    L = P.lattice_points
    for ms in combinations_with_replacement(range(len(L)), e):
        s = _vsum((L[i] for i in ms), d)
        out.setdefault(s, []).append(ms)
    return out


def degree_piece(P: LatticePolytope, e: int):
    """The e-fold sumset of L_P, as sorted GradedMonomials."""
    if e < 0:
        raise ValueError("degree must be nonnegative")
    if e == 0:
        return [GradedMonomial((0,) * P.ambient_dim, 0)]
    return [GradedMonomial(s, e) for s in sorted(fibers(P, e))]


def hilbert(P: LatticePolytope, e: int) -> int:
    if e == 0:
        return 1
    return len(fibers(P, e))


def ideal_dim(P: LatticePolytope, e: int) -> int:
    """Dimension of the degree-e piece of the toric ideal of k[P]."""
    m = P.n_points
    return comb(m + e - 1, e) - hilbert(P, e)


@lru_cache(maxsize=None)
def relations_of_degree(P: LatticePolytope, e: int):
    L = P.lattice_points
    rels = []
    for group in fibers(P, e).values():
        first = tuple(L[i] for i in group[0])
        for other in group[1:]:
            rels.append(BinomialRelation(first, tuple(L[i] for i in other)))
    return tuple(rels)


def binomial_relations(P: LatticePolytope, D: int):
    """Spanning set of the toric ideal in each degree 2..D, lowest degree first."""
    if D < 2:
        raise ValueError("relation degree bound must be >= 2")
    out = []
    for e in range(2, D + 1):
        out.extend(relations_of_degree(P, e))
    return out


def _product_rows(P, D, e):
    """Products relation*monomial landing in degree e, as (left, right) index multisets."""
    m = P.n_points
    rows = []
    for e1 in range(2, min(D, e) + 1):
        for rel in relations_of_degree(P, e1):
            li = tuple(P.index(x) for x in rel.left)
            ri = tuple(P.index(x) for x in rel.right)
            for mono in combinations_with_replacement(range(m), e - e1):
                rows.append((tuple(sorted(li + mono)), tuple(sorted(ri + mono))))
    return rows


def generation_matrix(P: LatticePolytope, D: int, e: int) -> ExactMatrix:
    """Rows: products of relations of degree <= D with monomials, in the degree-e monomial basis."""
    cols = {ms: j for j, ms in enumerate(combinations_with_replacement(range(P.n_points), e))}
    rows = []
    for left, right in _product_rows(P, D, e):
        r = [0] * len(cols)
        r[cols[left]] += 1
        r[cols[right]] -= 1
        rows.append(r)
    return ExactMatrix(rows, len(cols), QQ)


def _spanned_dim(P, D, e):
    # products are binomials inside one fiber, so the matrix is block diagonal
    where = {}
    for s, group in fibers(P, e).items():
        for j, ms in enumerate(group):
            where[ms] = (s, j)
    blocks = {}
    for left, right in _product_rows(P, D, e):
        s, jl = where[left]
        _, jr = where[right]
        if jl != jr:
            blocks.setdefault(s, []).append((jl, jr))
    total = 0
    for s, pairs in blocks.items():
        size = len(fibers(P, e)[s])
        rows = []
        for jl, jr in pairs:
            r = [0] * size
            r[jl] += 1
            r[jr] -= 1
            rows.append(r)
        total += rank(ExactMatrix(rows, size, QQ))
    return total


def is_generated_in_degree(P: LatticePolytope, D: int, check_up_to: int | None = None) -> bool:
    """True iff relations of degree <= D span the toric ideal in every degree <= check_up_to.

    This is a bounded certificate: degrees above ``check_up_to`` are not
    examined (``check_up_to`` defaults to D + 1).
    """
    if check_up_to is None:
        check_up_to = D + 1
    if D < 2 or check_up_to < D:
        raise ValueError("need check_up_to >= D >= 2")
    for e in range(D + 1, check_up_to + 1):
        if _spanned_dim(P, D, e) != ideal_dim(P, e):
            return False
    return True


@lru_cache(maxsize=None)
def default_relation_degree(P: LatticePolytope, max_degree: int = 8) -> int:
    """Smallest D >= 2 whose relations look like generators of the toric ideal.

    D qualifies when the exponent vectors of relations of degree <= D span
    the full relation lattice (rank #L_P - dim P - 1) and the bounded
    generation test passes one degree beyond D.
    """
    m = P.n_points
    if m == 0:
        return 2
    target = m - (P.dim + 1)
    for D in range(2, max_degree + 1):
        vecs = [r.exponent_difference(P) for r in binomial_relations(P, D)]
        if qrank(vecs, m) == target and is_generated_in_degree(P, D, D + 1):
            return D
    raise ValueError(f"no relation degree <= {max_degree} found for {P}")


def normalization_degree_piece(P: LatticePolytope, c: int):
    """Degree-c elements of the normalization of S_P: lattice points of cP in gp(S_P)."""
    if c < 1:
        raise ValueError("degree must be positive")
    L = P.lattice_points
    if not L:
        return []
    basis = P.affine_lattice_basis
    base = tuple(c * x for x in L[0])
    d = P.ambient_dim
    out = []
    for y in dilate(P, c).lattice_points:
        diff = tuple(a - b for a, b in zip(y, base))
        if lattice_coords(basis, diff, d) is not None:
            out.append(GradedMonomial(y, c))
    return out
