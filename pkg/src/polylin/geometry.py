"""Lattice polytopes: hulls, facets, lattice points, dilation, Minkowski sums.

Polytopes are small (dimension <= 4, a few dozen points), so everything is
done by brute force in exact arithmetic: facets come from enumerating
affinely independent point subsets, lattice points from a bounding-box scan.
Polytopes need not be full-dimensional; facets are then relative to the
affine hull, whose equations are kept separately.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product

from .arith.intlin import (
    hnf_basis,
    int_det,
    lattice_coords,
    primitive,
    qnullspace,
    qrank,
    qrowspace,
)
from .errors import DimensionMismatch


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


@dataclass(frozen=True)
class Facet:
    """A facet ``{x in P : normal . x = offset}``; P lies in ``normal . x >= offset``."""

    normal: tuple
    offset: int
    vertices: tuple
    lattice_points: tuple

    def contains(self, x):
        return _dot(self.normal, x) == self.offset


class LatticePolytope:
    """Convex hull of finitely many integer points.

    Derived data (vertices, facets, lattice points) is computed eagerly and
    the object is treated as immutable.  Equality and hashing use the
    ambient dimension and the lex-sorted vertex tuple; ``name`` is cosmetic.
    """

    def __init__(self, points, ambient_dim: int | None = None, name: str | None = None):
        pts = sorted({tuple(int(x) for x in p) for p in points})
        if ambient_dim is None:
            if not pts:
                raise ValueError("ambient dimension needed for the empty polytope")
            ambient_dim = len(pts[0])
        for p in pts:
            if len(p) != ambient_dim:
                raise DimensionMismatch(f"point {p} is not in Z^{ambient_dim}")
        self.ambient_dim = ambient_dim
        self.name = name
        self._build(pts)

    def _build(self, pts):
        d = self.ambient_dim
        if not pts:
            self.dim = -1
            self.vertices = ()
            self.equations = ()
            self.facets = ()
            self.lattice_points = ()
            self._index = {}
            return
        p0 = pts[0]
        diffs = [_sub(p, p0) for p in pts[1:]]
        basis = qrowspace(diffs, d)
        r = len(basis)
        self.dim = r
        eqs = []
        for n in qnullspace(basis, d) if r < d else []:
            n = primitive(n)
            eqs.append((n, _dot(n, p0)))
        self.equations = tuple(eqs)

        if r == 0:
            self.vertices = (p0,)
            self.facets = ()
            self.lattice_points = (p0,)
            self._index = {p0: 0}
            return

        found = {}
        for sub in combinations(pts, r):
            s0 = sub[0]
            us = [_sub(s, s0) for s in sub[1:]]
            # normal a = sum c_k basis_k orthogonal to the subset's directions
            rows = [[_dot(b, u) for b in basis] for u in us]
            ker = qnullspace(rows, r)
            if len(ker) != 1:
                continue
            a = [sum(c * b[j] for c, b in zip(ker[0], basis)) for j in range(d)]
            a = primitive(a)
            off = _dot(a, s0)
            vals = [_dot(a, p) for p in pts]
            if all(v >= off for v in vals):
                key = (a, off)
            elif all(v <= off for v in vals):
                key = (tuple(-x for x in a), -off)
            else:
                continue
            found[key] = True
        keys = sorted(found)
        verts = []
        for p in pts:
            normals = [a for a, b in keys if _dot(a, p) == b]
            if normals and qrank(normals, d) == r:
                verts.append(p)
        self.vertices = tuple(verts)

        lo = [min(v[i] for v in verts) for i in range(d)]
        hi = [max(v[i] for v in verts) for i in range(d)]
        lattice = []
        for x in product(*[range(a, b + 1) for a, b in zip(lo, hi)]):
            if all(_dot(n, x) == c for n, c in eqs) and all(_dot(a, x) >= b for a, b in keys):
                lattice.append(x)
        self.lattice_points = tuple(lattice)
        self._index = {x: i for i, x in enumerate(lattice)}
        self.facets = tuple(
            Facet(
                a,
                b,
                tuple(v for v in verts if _dot(a, v) == b),
                tuple(x for x in lattice if _dot(a, x) == b),
            )
            for a, b in keys
        )

    # -- protocol ------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, LatticePolytope):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.vertices == other.vertices

    def __hash__(self):
        return hash((self.ambient_dim, self.vertices))

    def __repr__(self):
        label = f"{self.name}: " if self.name else ""
        return f"LatticePolytope({label}{list(self.vertices)})"

    def __contains__(self, x):
        """Rational membership test for a point of R^d."""
        x = tuple(Fraction(v) for v in x)
        if len(x) != self.ambient_dim or self.dim < 0:
            return False
        if self.dim == 0:
            return x == self.vertices[0]
        return all(_dot(n, x) == c for n, c in self.equations) and all(
            _dot(f.normal, x) >= f.offset for f in self.facets
        )

    @property
    def is_empty(self):
        return self.dim < 0

    @property
    def n_points(self):
        return len(self.lattice_points)

    def index(self, x):
        """Position of lattice point x in the global lex order."""
        return self._index[tuple(x)]

    def has_point(self, x):
        return tuple(x) in self._index

    def contains_polytope(self, other):
        return all(v in self for v in other.vertices)

    def with_name(self, name):
        P = LatticePolytope.__new__(LatticePolytope)
        P.__dict__.update(self.__dict__)
        P.name = name
        return P

    def to_json(self, full=False):
        out = {"name": self.name or "", "ambient_dim": self.ambient_dim,
               "vertices": [list(v) for v in self.vertices]}
        if full:
            out["lattice_points"] = [list(x) for x in self.lattice_points]
            out["facets"] = [
                {"normal": list(f.normal), "offset": f.offset,
                 "lattice_points": [list(x) for x in f.lattice_points]}
                for f in self.facets
            ]
        return out

    @classmethod
    def from_json(cls, data):
        return cls(data["vertices"], data.get("ambient_dim"), data.get("name") or None)

    @cached_property
    def affine_lattice_basis(self):
        """Hermite basis of the lattice spanned by differences of lattice points."""
        L = self.lattice_points
        if not L:
            return ()
        return tuple(hnf_basis([_sub(x, L[0]) for x in L[1:]], self.ambient_dim))


@dataclass(frozen=True)
class AffineLatticeMap:
    """x -> matrix @ x + translation, with integer entries."""

    matrix: tuple
    translation: tuple

    @property
    def source_dim(self):
        return len(self.matrix[0]) if self.matrix else 0

    @property
    def target_dim(self):
        return len(self.translation)

    def __call__(self, x):
        return tuple(_dot(row, x) + t for row, t in zip(self.matrix, self.translation))

    @classmethod
    def identity(cls, d):
        return cls(tuple(tuple(int(i == j) for j in range(d)) for i in range(d)), (0,) * d)

    def is_identity(self):
        return self == AffineLatticeMap.identity(self.target_dim) and self.source_dim == self.target_dim

    def is_unimodular(self):
        n = len(self.matrix)
        return n == self.source_dim and abs(int_det(self.matrix)) == 1

    def compose(self, inner):
        """self o inner."""
        m = tuple(
            tuple(sum(self.matrix[i][k] * inner.matrix[k][j] for k in range(inner.target_dim))
                  for j in range(inner.source_dim))
            for i in range(self.target_dim)
        )
        return AffineLatticeMap(m, self(inner.translation))

    def apply_polytope(self, P):
        return LatticePolytope([self(v) for v in P.vertices], self.target_dim)

    def to_json(self):
        return {"matrix": [list(r) for r in self.matrix], "translation": list(self.translation)}

    @classmethod
    def from_json(cls, data):
        return cls(tuple(tuple(int(x) for x in r) for r in data["matrix"]),
                   tuple(int(x) for x in data["translation"]))


# -- operations ---------------------------------------------------------------


def lattice_points(P: LatticePolytope):
    return P.lattice_points


def facets(P: LatticePolytope):
    if P.dim < 1:
        raise ValueError("facets need a polytope of dimension >= 1")
    return P.facets


def dilate(P: LatticePolytope, c: int) -> LatticePolytope:
    if c < 1:
        raise ValueError("dilation factor must be positive")
    name = f"{c}*{P.name}" if P.name else None
    return LatticePolytope([tuple(c * x for x in v) for v in P.vertices], P.ambient_dim, name)


def translate(P: LatticePolytope, t) -> LatticePolytope:
    return LatticePolytope([_add(v, t) for v in P.vertices], P.ambient_dim)


def minkowski_sum(P: LatticePolytope, Q: LatticePolytope) -> LatticePolytope:
    if P.ambient_dim != Q.ambient_dim:
        raise DimensionMismatch("Minkowski sum of polytopes in different ambient spaces")
    return LatticePolytope([_add(a, b) for a in P.vertices for b in Q.vertices], P.ambient_dim)


def product_polytope(P: LatticePolytope, Q: LatticePolytope) -> LatticePolytope:
    return LatticePolytope(
        [a + b for a in P.vertices for b in Q.vertices], P.ambient_dim + Q.ambient_dim
    )


def newton_polytope(f) -> LatticePolytope:
    if f.is_zero():
        raise ValueError("the zero polynomial has no Newton polytope")
    return LatticePolytope(list(f.terms), f.dim)


def convex_hull(points, ambient_dim=None) -> LatticePolytope:
    return LatticePolytope(points, ambient_dim)


def normalize_lattice(P: LatticePolytope):
    """Re-embed P in Z^dim P so its lattice points span the lattice affinely.

    Returns ``(P_normalized, phi)`` where ``phi`` maps the new coordinates
    back to the original ones (an injective integral affine map).  When P is
    already normalized the pair is ``(P, identity)``.
    """
    d = P.ambient_dim
    L = P.lattice_points
    if not L:
        return P, AffineLatticeMap.identity(d)
    basis = P.affine_lattice_basis
    if len(basis) == d and abs(int_det(basis)) == 1:
        return P, AffineLatticeMap.identity(d)
    x0 = L[0]
    r = len(basis)
    verts = [tuple(lattice_coords(basis, _sub(v, x0), d)) for v in P.vertices]
    Pn = LatticePolytope(verts, r, P.name)
    matrix = tuple(tuple(basis[k][i] for k in range(r)) for i in range(d))
    return Pn, AffineLatticeMap(matrix, x0)


def is_normalized(P: LatticePolytope) -> bool:
    basis = P.affine_lattice_basis
    return P.dim == P.ambient_dim and abs(int_det(basis)) == 1


def is_pyramid(P: LatticePolytope):
    """All ``(apex, base)`` pairs with L_P = {apex} + L_base; empty list if none."""
    out = []
    L = P.lattice_points
    for v in P.vertices:
        rest = [x for x in L if x != v]
        if not rest:
            out.append((v, LatticePolytope([], P.ambient_dim)))
            continue
        base = LatticePolytope(rest, P.ambient_dim)
        if base.dim == P.dim - 1:
            out.append((v, base))
    return out


def faces(P: LatticePolytope, include_empty=False):
    """All faces of P (including P), as polytopes, sorted by dimension then vertices."""
    if P.dim < 0:
        return [P] if include_empty else []
    full = frozenset(P.vertices)
    seen = {full}
    frontier = [full]
    fsets = [frozenset(f.vertices) for f in P.facets]
    while frontier:
        nxt = []
        for S in frontier:
            for F in fsets:
                T = S & F
                if T != S and T not in seen and (T or include_empty):
                    seen.add(T)
                    nxt.append(T)
        frontier = nxt
    polys = [LatticePolytope(sorted(S), P.ambient_dim) for S in seen]
    return sorted(polys, key=lambda F: (F.dim, F.vertices))


def is_face(P: LatticePolytope, F: LatticePolytope) -> bool:
    if F.ambient_dim != P.ambient_dim:
        return False
    if F.is_empty:
        return True
    if not set(F.vertices) <= set(P.vertices):
        return False
    S = set(P.vertices)
    for f in P.facets:
        if all(f.contains(v) for v in F.vertices):
            S &= set(f.vertices)
    return S == set(F.vertices)


def simplex(n: int, c: int = 1, ambient_dim: int | None = None) -> LatticePolytope:
    """c * Delta_n = conv(0, c e_1, ..., c e_n)."""
    d = n if ambient_dim is None else ambient_dim
    verts = [(0,) * d] + [tuple(c * int(i == j) for j in range(d)) for i in range(n)]
    name = f"Delta_{n}" if c == 1 else f"{c}Delta_{n}"
    return LatticePolytope(verts, d, name)
