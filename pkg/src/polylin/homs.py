"""Graded homomorphisms k[P] -> k[Q] and the equations cutting out Hom(k[P], k[Q]).

A graded homomorphism is determined by where it sends the degree-one
generators, so it is stored as a #L_Q x #L_P matrix: the column of x lists
the coefficients of f(x) on the lattice points of Q.  Columns and rows both
follow the lex order of lattice points.
"""

from __future__ import annotations

from collections import defaultdict
from itertools import product

from .arith.fields import QQ, current_field
from .arith.laurent import LaurentPoly
from .arith.matrix import ExactMatrix, rank
from .errors import ImageEscapesTarget, ShapeMismatch
from .geometry import LatticePolytope
from .semigroup import binomial_relations, default_relation_degree, degree_piece


class GradedHom:
    """A degree-preserving algebra map given by its action on L_P.

    ``verified`` is set by constructors whose output is a homomorphism by
    construction or has been checked; it is informational only.
    """

    __slots__ = ("source", "target", "matrix", "verified")

    def __init__(self, source: LatticePolytope, target: LatticePolytope, matrix: ExactMatrix,
                 verified: bool = False):
        if matrix.shape != (target.n_points, source.n_points):
            raise ShapeMismatch(
                f"matrix shape {matrix.shape} does not match "
                f"#L_Q x #L_P = {(target.n_points, source.n_points)}"
            )
        self.source = source
        self.target = target
        self.matrix = matrix
        self.verified = verified

    @property
    def field(self):
        return self.matrix.field

    @classmethod
    def identity(cls, P: LatticePolytope, field=None):
        return cls(P, P, ExactMatrix.identity(P.n_points, field), verified=True)

    @classmethod
    def from_images(cls, P, Q, images, field=None, verified=False):
        """Build from ``{x: {y: coeff}}``; missing x map to 0."""
        field = field or current_field()
        rows = [[field.zero] * P.n_points for _ in range(Q.n_points)]
        for x, img in images.items():
            j = P.index(x)
            for y, a in img.items():
                if not Q.has_point(y):
                    raise ImageEscapesTarget(f"{tuple(y)} is not a lattice point of the target",
                                             point=tuple(x), monomial=tuple(y))
                rows[Q.index(y)][j] += field(a)
        return cls(P, Q, ExactMatrix(rows, P.n_points, field), verified)

    @classmethod
    def from_laurent(cls, P, Q, images, field=None, verified=False):
        """Build from ``{x: LaurentPoly}`` with exponents in L_Q."""
        return cls.from_images(P, Q, {x: dict(f.terms) for x, f in images.items()},
                               field, verified)

    def column(self, x) -> dict:
        """Image of lattice point x as ``{y: coeff}`` (nonzero coefficients only)."""
        j = self.source.index(x)
        L = self.target.lattice_points
        return {L[i]: self.matrix.rows[i][j] for i in range(self.matrix.nrows)
                if self.matrix.rows[i][j] != 0}

    def image(self, x) -> LaurentPoly:
        """f(x) as a Laurent polynomial in the target coordinates (degree marker dropped)."""
        return LaurentPoly._raw(self.column(x), self.target.ambient_dim, self.field)

    def images(self):
        return {x: self.image(x) for x in self.source.lattice_points}

    def apply_monomial(self, xs) -> LaurentPoly:
        """Image of the product of the lattice points in ``xs``."""
        out = LaurentPoly.constant(self.field.one, self.target.ambient_dim, self.field)
        for x in xs:
            out = out * self.image(x)
        return out

    def __eq__(self, other):
        if not isinstance(other, GradedHom):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.matrix == other.matrix)

    def __hash__(self):
        return hash((self.source, self.target, self.matrix))

    def __repr__(self):
        return f"GradedHom({self.source!r} -> {self.target!r}, {self.matrix.to_json()})"

    def to_json(self):
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "field": self.field.name,
            "matrix": self.matrix.to_json(),
        }

    @classmethod
    def from_json(cls, data, field=None):
        field = field or current_field()
        P = LatticePolytope.from_json(data["source"])
        Q = LatticePolytope.from_json(data["target"])
        if "matrix" in data:
            M = ExactMatrix(data["matrix"], P.n_points, field)
            return cls(P, Q, M)
        images = {}
        for entry in data["images"]:
            images[tuple(entry["x"])] = {tuple(t["exponents"]): t["coeff"] for t in entry["image"]}
        return cls.from_images(P, Q, images, field)


def _relation_degree(P, D):
    return default_relation_degree(P) if D is None else D


def is_homomorphism(f: GradedHom, D: int | None = None) -> bool:
    """Push every spanning binomial relation of degree <= D through f."""
    P = f.source
    if P.n_points == 0:
        return True
    for rel in binomial_relations(P, _relation_degree(P, D)):
        if f.apply_monomial(rel.left) != f.apply_monomial(rel.right):
            return False
    return True


def compose(g: GradedHom, f: GradedHom) -> GradedHom:
    """g o f."""
    if f.target != g.source:
        raise ShapeMismatch("target of f differs from source of g")
    return GradedHom(f.source, g.target, g.matrix @ f.matrix, f.verified and g.verified)


def degree1_rank(f: GradedHom):
    r = rank(f.matrix) if f.matrix.nrows and f.matrix.ncols else 0
    return r, r == f.source.n_points, r == f.target.n_points


def is_idempotent(f: GradedHom) -> bool:
    if f.source != f.target:
        raise ShapeMismatch("idempotence needs an endomorphism")
    return compose(f, f).matrix == f.matrix


# -- defining equations ---------------------------------------------------------


class HomEquations:
    """Integer polynomials in the variables X_(x,y) whose zero set is Hom(k[P], k[Q]).

    A polynomial is a dict from monomials (sorted tuples of variable
    indices, repetitions allowed) to nonzero ints.  Variable index
    ``i * #L_Q + j`` stands for the coefficient of the j-th point of Q in
    the image of the i-th point of P.
    """

    def __init__(self, source, target, polys):
        self.source = source
        self.target = target
        self.polys = polys

    @property
    def variables(self):
        return [(x, y) for x in self.source.lattice_points for y in self.target.lattice_points]

    def var_index(self, x, y):
        return self.source.index(x) * self.target.n_points + self.target.index(y)

    def __len__(self):
        return len(self.polys)

    def evaluate(self, matrix: ExactMatrix):
        """Values of all polynomials at the point given by a #L_Q x #L_P matrix."""
        n = self.target.n_points
        vals = [matrix.rows[v % n][v // n] for v in range(self.source.n_points * n)]
        field = matrix.field
        out = []
        for poly in self.polys:
            acc = field.zero
            for mono, c in poly.items():
                term = field(c)
                for v in mono:
                    term = term * vals[v]
                acc = acc + term
            out.append(acc)
        return out

    def vanishes_at(self, matrix: ExactMatrix) -> bool:
        return all(v == 0 for v in self.evaluate(matrix))

    def jacobian_at(self, matrix: ExactMatrix) -> ExactMatrix:
        n = self.target.n_points
        nvars = self.source.n_points * n
        vals = [matrix.rows[v % n][v // n] for v in range(nvars)]
        field = matrix.field
        rows = []
        for poly in self.polys:
            row = [field.zero] * nvars
            for mono, c in poly.items():
                for k, v in enumerate(mono):
                    if k and mono[k - 1] == v:
                        continue
                    mult = mono.count(v)
                    rest = list(mono)
                    rest.remove(v)
                    term = field(c * mult)
                    for u in rest:
                        term = term * vals[u]
                    row[v] = row[v] + term
            rows.append(row)
        return ExactMatrix(rows, nvars, field)

    def to_json(self):
        return {
            "vars": [[list(x), list(y)] for x, y in self.variables],
            "polys": [
                [{"monomial": list(m), "coeff": c} for m, c in sorted(p.items())]
                for p in self.polys
            ],
        }


def _expand_side(xs, P, Q):
    """prod_k (sum_y X_(x_k, y) y) grouped by the target sum: ``{sum: {monomial: coeff}}``."""
    n = Q.n_points
    L = Q.lattice_points
    d = Q.ambient_dim
    out = defaultdict(lambda: defaultdict(int))
    for ys in product(range(n), repeat=len(xs)):
        s = tuple(sum(L[j][i] for j in ys) for i in range(d))
        mono = tuple(sorted(P.index(x) * n + j for x, j in zip(xs, ys)))
        out[s][mono] += 1
    return out


def hom_equations(P: LatticePolytope, Q: LatticePolytope, D: int | None = None) -> HomEquations:
    polys = []
    seen = set()
    if P.n_points:
        for rel in binomial_relations(P, _relation_degree(P, D)):
            left = _expand_side(rel.left, P, Q)
            right = _expand_side(rel.right, P, Q)
            for gm in degree_piece(Q, rel.degree):
                poly = dict(left.get(gm.vector, {}))
                for m, c in right.get(gm.vector, {}).items():
                    poly[m] = poly.get(m, 0) - c
                poly = {m: c for m, c in poly.items() if c}
                key = tuple(sorted(poly.items()))
                if poly and key not in seen:
                    seen.add(key)
                    polys.append(poly)
    return HomEquations(P, Q, polys)


def tangent_dim(P: LatticePolytope, D: int | None = None) -> int:
    """Dimension of the tangent space of Hom(k[P], k[P]) at the identity, over Q."""
    m = P.n_points
    eqs = hom_equations(P, P, D)
    if not eqs.polys:
        return m * m
    J = eqs.jacobian_at(ExactMatrix.identity(m, QQ))
    return m * m - rank(J)
