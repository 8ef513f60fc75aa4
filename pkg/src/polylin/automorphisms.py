"""Graded automorphisms of k[P]: elementary, toric and symmetry generators.

Every graded automorphism factors as a product of elementary automorphisms
grouped by base facet, followed by a toric scaling and a lattice symmetry.
This module builds those generators and composes them in that normal form;
it does not decompose an arbitrary automorphism.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import comb

from .arith.fields import QQ, current_field
from .arith.intlin import int_det, qrank
from .arith.matrix import ExactMatrix
from .errors import InvalidScalar, NormalFormError, NotAColumn, NotALatticePoint
from .geometry import AffineLatticeMap, Facet, LatticePolytope, normalize_lattice
from .homs import GradedHom, compose


@dataclass(frozen=True)
class ColumnStructure:
    """A column vector v of P together with its base facet (by index into P.facets)."""

    v: tuple
    base_facet: int

    def facet(self, P: LatticePolytope) -> Facet:
        return P.facets[self.base_facet]

    def to_json(self):
        return {"v": list(self.v), "base_facet": self.base_facet}

    @classmethod
    def from_json(cls, data):
        return cls(tuple(data["v"]), int(data["base_facet"]))


def _add(a, b, k=1):
    return tuple(x + k * y for x, y in zip(a, b))


def column_vectors(P: LatticePolytope):
    """All column structures of P, sorted by (v, base facet index).

    Every column vector moves some lattice point to another one, so the
    differences of lattice points are a complete candidate set.
    """
    if P.dim < 1:
        raise ValueError("column vectors need dim P >= 1")
    L = P.lattice_points
    cands = sorted({_add(x, y, -1) for x in L for y in L if x != y})
    out = []
    for v in cands:
        for i, F in enumerate(P.facets):
            if all(P.has_point(_add(x, v)) for x in L if not F.contains(x)):
                out.append(ColumnStructure(v, i))
    return out


def column_count(P: LatticePolytope) -> int:
    """#Col(P): number of distinct column vectors."""
    return len({c.v for c in column_vectors(P)})


def _check_column(P, col):
    if col not in column_vectors(P):
        raise NotAColumn(f"{col.v} with base facet {col.base_facet} is not a column structure of P")


def height(P: LatticePolytope, col: ColumnStructure, x) -> int:
    x = tuple(x)
    if not P.has_point(x):
        raise NotALatticePoint(f"{x} is not a lattice point of P")
    m = 0
    while P.has_point(_add(x, col.v, m + 1)):
        m += 1
    return m


def elementary(P: LatticePolytope, col: ColumnStructure, lam, field=None) -> GradedHom:
    """x -> (1 + lam v)^ht(x) x."""
    field = field or current_field()
    _check_column(P, col)
    lam = field(lam)
    m = P.n_points
    rows = [[field.zero] * m for _ in range(m)]
    for j, x in enumerate(P.lattice_points):
        h = height(P, col, x)
        for k in range(h + 1):
            rows[P.index(_add(x, col.v, k))][j] += comb(h, k) * lam**k
    return GradedHom(P, P, ExactMatrix(rows, m, field), verified=True)


def toric(P: LatticePolytope, xi, field=None) -> GradedHom:
    """Diagonal scaling of (x, 1) by xi_1^x_1 ... xi_d^x_d xi_{d+1}."""
    field = field or current_field()
    xi = [field(a) for a in xi]
    if len(xi) != P.ambient_dim + 1:
        raise InvalidScalar(f"need {P.ambient_dim + 1} scalars, got {len(xi)}")
    if any(a == 0 for a in xi):
        raise InvalidScalar("toric scalars must be nonzero")
    m = P.n_points
    rows = [[field.zero] * m for _ in range(m)]
    for j, x in enumerate(P.lattice_points):
        s = xi[-1]
        for a, e in zip(xi, x):
            s = s * a**e
        rows[j][j] = s
    return GradedHom(P, P, ExactMatrix(rows, m, field), verified=True)


@dataclass(frozen=True)
class Symmetry:
    """A lattice automorphism of P.

    ``affine`` acts on the ambient coordinates when P is full-dimensional
    with lattice points spanning Z^d, and on the normalized coordinates of
    P otherwise.  ``permutation[i]`` is the index of the image of the i-th
    lattice point.
    """

    affine: AffineLatticeMap
    permutation: tuple

    def hom(self, P: LatticePolytope, field=None) -> GradedHom:
        field = field or current_field()
        m = P.n_points
        rows = [[field.zero] * m for _ in range(m)]
        for j, i in enumerate(self.permutation):
            rows[i][j] = field.one
        return GradedHom(P, P, ExactMatrix(rows, m, field), verified=True)

    def to_json(self):
        return {"affine": self.affine.to_json(), "permutation": list(self.permutation)}


def _affine_basis(verts):
    """Indices of dim+1 affinely independent vertices (greedy)."""
    chosen = [0]
    d = len(verts[0])
    for i in range(1, len(verts)):
        trial = chosen + [i]
        diffs = [_add(verts[k], verts[chosen[0]], -1) for k in trial[1:]]
        if qrank(diffs, d) == len(diffs):
            chosen = trial
    return chosen


def symmetries(P: LatticePolytope):
    """All unimodular affine automorphisms of P, identity first."""
    Pn, phi = normalize_lattice(P)
    if Pn.dim <= 0:
        ident = AffineLatticeMap.identity(Pn.ambient_dim)
        return [Symmetry(ident, tuple(range(P.n_points)))]
    verts = Pn.vertices
    n = Pn.dim
    base = _affine_basis(verts)
    v0 = verts[base[0]]
    V = [_add(verts[k], v0, -1) for k in base[1:]]  # rows
    vset = set(verts)
    found = {}
    for img in permutations(range(len(verts)), n + 1):
        w0 = verts[img[0]]
        W = [_add(verts[k], w0, -1) for k in img[1:]]
        # A V^T = W^T  =>  A = W^T (V^T)^{-1}
        A = _solve_linear(V, W, n)
        if A is None:
            continue
        if any(a.denominator != 1 for r in A for a in r):
            continue
        A = tuple(tuple(int(a) for a in r) for r in A)
        if abs(int_det(A)) != 1:
            continue
        t = tuple(w - sum(a * v for a, v in zip(row, v0)) for w, row in zip(w0, A))
        g = AffineLatticeMap(A, t)
        if {g(v) for v in verts} != vset:
            continue
        perm = tuple(Pn.index(g(x)) for x in Pn.lattice_points)
        found[perm] = g
    out = [Symmetry(found[p], p) for p in sorted(found)]
    if Pn is not P:
        # permutations are the same on P because phi is a bijection of lattice points
        order = [P.index(phi(x)) for x in Pn.lattice_points]
        out = [Symmetry(s.affine, _transport(s.permutation, order)) for s in out]
    return out


def _transport(perm, order):
    res = [0] * len(perm)
    for i, j in enumerate(perm):
        res[order[i]] = order[j]
    return tuple(res)


def _solve_linear(V, W, n):
    """A with A @ V[k] = W[k] for all k, or None if the V[k] are dependent."""
    VT = ExactMatrix([[V[k][i] for k in range(n)] for i in range(n)], n, QQ)
    try:
        inv = VT.inverse().rows
    except ZeroDivisionError:
        return None
    return [[sum(Fraction(W[k][i]) * inv[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)]


def predicted_gamma_dim(P: LatticePolytope) -> int:
    return column_count(P) + P.dim + 1


def _lookup_column(P, key, facet_index):
    if isinstance(key, ColumnStructure):
        col = key
    else:
        col = ColumnStructure(tuple(key), facet_index)
    if col.base_facet != facet_index:
        raise NormalFormError(f"column {col.v} is not based at facet {facet_index}")
    try:
        _check_column(P, col)
    except NotAColumn as e:
        raise NormalFormError(str(e)) from None
    return col


def block(P: LatticePolytope, facet_index: int, lambdas: dict, field=None) -> GradedHom:
    """Product of the elementaries based at one facet (they commute)."""
    field = field or current_field()
    out = GradedHom.identity(P, field)
    for key, lam in lambdas.items():
        col = _lookup_column(P, key, facet_index)
        out = compose(out, elementary(P, col, lam, field))
    return out


def compose_normal_form(P: LatticePolytope, sigma=None, tau=None, blocks=(), field=None):
    """alpha_1 o ... o alpha_r o tau o sigma.

    ``sigma`` is a Symmetry (or None for the identity), ``tau`` a list of
    toric scalars (or None), and ``blocks`` an ordered list of
    ``(facet_index, {column: lambda})`` with pairwise different facets
    sorted by nondecreasing lattice-point count.
    """
    field = field or current_field()
    idx = [int(f) for f, _ in blocks]
    if len(set(idx)) != len(idx):
        raise NormalFormError("facets in the normal form must be pairwise different")
    for i in idx:
        if not 0 <= i < len(P.facets):
            raise NormalFormError(f"no facet with index {i}")
    sizes = [len(P.facets[i].lattice_points) for i in idx]
    if any(a > b for a, b in zip(sizes, sizes[1:])):
        raise NormalFormError("blocks must be ordered by nondecreasing #L_F")
    out = GradedHom.identity(P, field)
    for i, lambdas in blocks:
        out = compose(out, block(P, int(i), lambdas, field))
    if tau is not None:
        out = compose(out, toric(P, tau, field))
    if sigma is not None:
        out = compose(out, sigma.hom(P, field))
    return out
