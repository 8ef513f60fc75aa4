"""Constructors for new homomorphisms out of old ones.

Face and fibration retractions, homothetic blow-ups, Minkowski stars, free
extensions over pyramids and polytope changes, together with the
decomposition of maps out of k[c Delta_n] into a blow-up starred with a
constant map.  Recipes (expression trees over these constructors) live in
``polylin.recipe``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .arith.fields import current_field
from .arith.intlin import hnf_basis, int_det, primitive, qrank, solve_rational
from .arith.laurent import LaurentPoly, laurent_exact_div, laurent_gcd, laurent_nth_root
from .arith.matrix import ExactMatrix
from .errors import (
    DimensionMismatch,
    ImageEscapesTarget,
    InvalidFibration,
    NewtonContainmentViolated,
    NotAFace,
    NotAPyramid,
    NotIntegralAffine,
    ScalarRootMissing,
    ShapeMismatch,
    WitnessNotFound,
    ZeroGeneratorImage,
)
from .geometry import (
    AffineLatticeMap,
    LatticePolytope,
    dilate,
    is_face,
    is_normalized,
    is_pyramid,
    simplex,
)
from .homs import GradedHom
from .semigroup import fibers, normalization_degree_piece


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def empty_polytope(ambient_dim: int) -> LatticePolytope:
    """The empty polytope; its algebra is the ground field k."""
    return LatticePolytope([], ambient_dim)


def identity_k(ambient_dim: int = 0, field=None) -> GradedHom:
    """Identity of k = k[empty], a map with no degree-one generators (0 x 0 matrix)."""
    E = empty_polytope(ambient_dim)
    return GradedHom(E, E, ExactMatrix([], 0, field), verified=True)


def inclusion(sub: LatticePolytope, P: LatticePolytope, field=None) -> GradedHom:
    """Monomial inclusion k[sub] -> k[P] for L_sub a subset of L_P."""
    field = field or current_field()
    return GradedHom.from_images(sub, P, {x: {x: 1} for x in sub.lattice_points}, field)


# -- faces ----------------------------------------------------------------------


def face_retraction(P: LatticePolytope, F: LatticePolytope, field=None) -> GradedHom:
    if not is_face(P, F):
        raise NotAFace(f"{F!r} is not a face of {P!r}")
    field = field or current_field()
    images = {x: {x: 1} for x in F.lattice_points}
    out = GradedHom.from_images(P, F, images, field)
    out.verified = True
    return out


def face_inclusion(P: LatticePolytope, F: LatticePolytope, field=None) -> GradedHom:
    if not is_face(P, F):
        raise NotAFace(f"{F!r} is not a face of {P!r}")
    out = inclusion(F, P, field)
    out.verified = True
    return out


# -- fibrations -----------------------------------------------------------------


@dataclass(frozen=True)
class Fibration:
    """A lattice fibration (P, H, W): L_P covered by W-translates of L_P on H."""

    polytope: LatticePolytope
    W: tuple
    H_point: tuple
    H_basis: tuple

    @property
    def codim(self):
        return len(self.W)

    def in_base(self, x) -> bool:
        return solve_rational(self.H_basis, _sub(x, self.H_point), self.polytope.ambient_dim) is not None

    @property
    def base_points(self):
        return tuple(x for x in self.polytope.lattice_points if self.in_base(x))

    def base(self) -> LatticePolytope:
        return LatticePolytope(self.base_points, self.polytope.ambient_dim)

    def fiber_map(self):
        """Each lattice point of P -> the base point on its fiber (None if uncovered)."""
        d = self.polytope.ambient_dim
        B = self.base_points
        out = {}
        for x in self.polytope.lattice_points:
            hits = [h for h in B if solve_rational(self.W, _sub(x, h), d) is not None]
            out[x] = hits[0] if len(hits) == 1 else None
        return out

    def validate(self):
        P = self.polytope
        d = P.ambient_dim
        n = P.dim
        if not is_normalized(P):
            raise InvalidFibration("fibrations are defined for normalized polytopes")
        if qrank(self.W, d) != len(self.W) or qrank(self.H_basis, d) != len(self.H_basis):
            raise InvalidFibration("W and H need independent bases")
        if len(self.W) + len(self.H_basis) != n or qrank(list(self.W) + list(self.H_basis), d) != n:
            raise InvalidFibration("W and H must be complementary")
        B = self.base_points
        if not B:
            raise InvalidFibration("the base P cap H has no lattice points")
        fm = self.fiber_map()
        bad = [x for x, h in fm.items() if h is None]
        if bad:
            raise InvalidFibration(f"lattice point {bad[0]} lies on no fiber through the base")
        # gp(S_P) = Z^{n+1} must split as ZW (+) gp(S_{P cap H})
        hs = hnf_basis([h + (1,) for h in B], d + 1)
        M = [tuple(w) + (0,) for w in self.W] + list(hs)
        if len(M) != d + 1 or abs(int_det(M)) != 1:
            raise InvalidFibration("the lattice does not split along W and H")
        return self

    def to_json(self):
        out = {"H_point": list(self.H_point), "H_basis": [list(b) for b in self.H_basis]}
        if self.codim == 1:
            out["w"] = list(self.W[0])
        else:
            out["W_basis"] = [list(w) for w in self.W]
        return out

    @classmethod
    def from_json(cls, P, data):
        W = [data["w"]] if "w" in data else data["W_basis"]
        return cls(P, tuple(tuple(w) for w in W), tuple(data["H_point"]),
                   tuple(tuple(b) for b in data["H_basis"]))


def _canonical_direction(v):
    v = primitive(v)
    first = next(x for x in v if x)
    return v if first > 0 else tuple(-x for x in v)


def detect_segmental_fibrations(P: LatticePolytope):
    """All codimension-one fibrations (P, H, w), w primitive with positive leading entry.

    For each direction w the lattice points split into lines parallel to w;
    every choice of one point per line spanning a hyperplane transversal to
    w is tested.
    """
    if not is_normalized(P):
        raise DimensionMismatch("detect_segmental_fibrations needs a normalized polytope")
    d = P.ambient_dim
    L = P.lattice_points
    n = P.dim
    dirs = sorted({_canonical_direction(_sub(x, y)) for x in L for y in L if x != y})
    out = []
    for w in dirs:
        classes = []
        for x in L:
            for cl in classes:
                if qrank([_sub(x, cl[0]), w], d) <= 1:
                    cl.append(x)
                    break
            else:
                classes.append([x])
        if len(classes) < n:
            continue
        for reps in product(*classes):
            diffs = [_sub(r, reps[0]) for r in reps[1:]]
            if qrank(diffs, d) != n - 1 or qrank(diffs + [w], d) != n:
                continue
            fib = Fibration(P, (w,), reps[0], tuple(hnf_basis(diffs, d)))
            try:
                fib.validate()
            except InvalidFibration:
                continue
            out.append(fib)
    return out


def fibration_retraction(fib: Fibration, field=None) -> GradedHom:
    fib.validate()
    field = field or current_field()
    images = {x: {h: 1} for x, h in fib.fiber_map().items()}
    out = GradedHom.from_images(fib.polytope, fib.base(), images, field)
    out.verified = True
    return out


def base_inclusion(fib: Fibration, field=None) -> GradedHom:
    out = inclusion(fib.base(), fib.polytope, field)
    out.verified = True
    return out


# -- blow-ups, stars, extensions, changes ---------------------------------------------


def _nonzero_face(P, points):
    if not points:
        return None
    F = LatticePolytope(points, P.ambient_dim)
    return F if is_face(P, F) and set(F.lattice_points) == set(points) else None


def _check_no_zero_images(f: GradedHom):
    zero = [x for x in f.source.lattice_points if not f.column(x)]
    if zero:
        alive = [x for x in f.source.lattice_points if x not in zero]
        raise ZeroGeneratorImage(
            f"{len(zero)} lattice point(s) map to zero, first {zero[0]}",
            points=zero, face=_nonzero_face(f.source, alive),
        )


def homothetic_blowup(f: GradedHom, c: int, search_bound: int | None = None,
                      witness_degree: int | None = None) -> GradedHom:
    """f^(c): k[cP] -> k[cQ], through the extension of f to the normalization.

    For x in L_cP a witness z of degree e is searched with x + z in S_P, and
    f^(c)(x) = f(x + z) / f(z).  ``witness_degree`` forces e (for testing
    witness independence); otherwise e runs from 0 up to ``search_bound``
    (default c * #L_P).
    """
    if c < 1:
        raise ValueError("blow-up factor must be positive")
    _check_no_zero_images(f)
    P, Q = f.source, f.target
    cP, cQ = dilate(P, c), dilate(Q, c)
    norm = {g.vector for g in normalization_degree_piece(P, c)}
    if norm != set(cP.lattice_points):
        raise DimensionMismatch("lattice points of cP outside gp(S_P); normalize P first")
    L = P.lattice_points
    bound = c * len(L) if search_bound is None else search_bound
    degrees = [witness_degree] if witness_degree is not None else range(bound + 1)
    images = {}
    for x in cP.lattice_points:
        found = None
        for e in degrees:
            top = fibers(P, c + e)
            for s, group in fibers(P, e).items():
                key = _add(x, s)
                if key in top:
                    found = (top[key][0], group[0])
                    break
            if found:
                break
        if found is None:
            raise WitnessNotFound(f"no witness for {x} in degrees {list(degrees)[:1]}..{list(degrees)[-1:]}")
        num = f.apply_monomial([L[i] for i in found[0]])
        den = f.apply_monomial([L[i] for i in found[1]])
        images[x] = laurent_exact_div(num, den)
    return GradedHom.from_laurent(cP, cQ, images, f.field, verified=f.verified)


def minkowski_star(f: GradedHom, g: GradedHom) -> GradedHom:
    """x -> f(x) g(x) with the degree lowered by one."""
    if f.source != g.source or f.target != g.target:
        raise ShapeMismatch("Minkowski star needs equal sources and equal targets")
    Q = f.target
    images = {}
    for x in f.source.lattice_points:
        F, G = f.image(x), g.image(x)
        # N(F) + N(G) lies in Q iff every pairwise exponent sum does
        for a in F.terms:
            for b in G.terms:
                if _add(a, b) not in Q:
                    raise NewtonContainmentViolated(
                        f"N(f({x})) + N(g({x})) leaves the target at {_add(a, b)}", point=x)
        images[x] = F * G
    return GradedHom.from_laurent(f.source, Q, images, f.field,
                                  verified=f.verified and g.verified)


def _as_terms(q, field):
    if isinstance(q, LaurentPoly):
        return dict(q.terms)
    return {tuple(y): field(a) for y, a in dict(q).items()}


def free_extension(f0: GradedHom, P: LatticePolytope, apex, q) -> GradedHom:
    """Extend f0: k[P_0] -> k[Q] to k[P] = k[P_0][apex] with apex -> q."""
    apex = tuple(apex)
    base_pts = set(f0.source.lattice_points)
    ok = any(v == apex and set(B.lattice_points) == base_pts for v, B in is_pyramid(P))
    if not ok:
        raise NotAPyramid(f"{P!r} is not a pyramid with apex {apex} over the source of f0")
    images = {x: f0.column(x) for x in f0.source.lattice_points}
    images[apex] = _as_terms(q, f0.field)
    return GradedHom.from_images(P, f0.target, images, f0.field, verified=f0.verified)


def _default_embedding(d_from, d_to):
    # first coordinates; extra target coordinates are 0
    m = tuple(tuple(int(i == j) for j in range(d_from)) for i in range(d_to))
    return AffineLatticeMap(m, (0,) * d_to)


def polytope_change(f: GradedHom, source: LatticePolytope | None = None,
                    target: LatticePolytope | None = None,
                    source_map: AffineLatticeMap | None = None,
                    target_map: AffineLatticeMap | None = None) -> GradedHom:
    """Restrict and/or transport f.

    The new source is ``source`` (default f.source), identified with the
    subpolytope source_map(source) of f.source; source_map must be a
    bijection of lattice points onto that subpolytope's lattice points.  The
    new images are f(source_map(x)) with exponents pushed through
    ``target_map`` and must land in L_target.
    """
    P, Q = f.source, f.target
    source = source or P
    target = target or Q
    if source_map is None:
        source_map = (AffineLatticeMap.identity(P.ambient_dim)
                      if source.ambient_dim == P.ambient_dim
                      else _default_embedding(source.ambient_dim, P.ambient_dim))
    if target_map is None:
        target_map = (AffineLatticeMap.identity(Q.ambient_dim)
                      if target.ambient_dim == Q.ambient_dim
                      else _default_embedding(Q.ambient_dim, target.ambient_dim))
    Ls = source.lattice_points
    moved = [source_map(x) for x in Ls]
    if Ls:
        sub = LatticePolytope(moved, P.ambient_dim)
        if (len(set(moved)) != len(Ls) or set(sub.lattice_points) != set(moved)
                or sub.dim != source.dim):
            raise DimensionMismatch("source map is not a lattice isomorphism onto its image")
        for y in moved:
            if not P.has_point(y):
                raise DimensionMismatch(f"{y} is not a lattice point of the old source")
    images = {}
    for x, y in zip(Ls, moved):
        img = {}
        for e, a in f.column(y).items():
            e2 = target_map(e)
            if not target.has_point(e2):
                raise ImageEscapesTarget(f"image of {x} has monomial {e2} outside the target",
                                         point=x, monomial=e2)
            img[e2] = img.get(e2, f.field.zero) + a
        images[x] = img
    return GradedHom.from_images(source, target, images, f.field, verified=f.verified)


# -- simplices: affine factorization and the Veronese decomposition ----------------


def _simplex_params(P: LatticePolytope):
    n = P.ambient_dim
    if n < 1 or P.dim != n:
        raise DimensionMismatch("source must be c*Delta_n in Z^n with n >= 1")
    c = max(max(v) for v in P.vertices)
    if P != simplex(n, c):
        raise DimensionMismatch("source must be c*Delta_n = conv(0, c e_1, ..., c e_n)")
    return n, c


def barycentric(x, c):
    """Barycentric coordinates (a_0, ..., a_n) of x in c*Delta_n."""
    return (c - sum(x),) + tuple(x)


@dataclass(frozen=True)
class AffineFactorization:
    """alpha(x) = v + sum_i a_i(x) beta[i], a the barycentric coordinates of x in c*Delta_n."""

    v: tuple
    beta: tuple
    c: int

    def __call__(self, x):
        a = barycentric(x, self.c)
        return tuple(vk + sum(ai * b[k] for ai, b in zip(a, self.beta))
                     for k, vk in enumerate(self.v))

    def to_json(self):
        return {"v": list(self.v), "beta": [list(b) for b in self.beta], "c": self.c}


def factor_affine(alpha: dict, c: int) -> AffineFactorization:
    """Split an integral affine alpha: L_{c Delta_n} -> Z_+^d as v + c*beta.

    ``alpha`` maps points of c*Delta_n (in Z^n) to vectors; the vertex
    images are required, any other given values are checked against the
    affine extension.
    """
    if c < 1:
        raise ValueError("c must be positive")
    alpha = {tuple(k): tuple(int(t) for t in v) for k, v in alpha.items()}
    n = len(next(iter(alpha)))
    S = simplex(n, c) if n else LatticePolytope([()], 0)
    verts = [(0,) * n] + [tuple(c * int(i == j) for j in range(n)) for i in range(n)]
    try:
        A = [alpha[v] for v in verts]
    except KeyError as e:
        raise NotIntegralAffine(f"missing image of vertex {e.args[0]}") from None
    d = len(A[0])
    if any(len(a) != d for a in alpha.values()):
        raise NotIntegralAffine("images of different lengths")
    if any(t < 0 for a in alpha.values() for t in a):
        raise NotIntegralAffine("images must lie in Z_+^d")
    for x in S.lattice_points:
        a = barycentric(x, c)
        val = [Fraction(sum(ai * Ai[k] for ai, Ai in zip(a, A)), c) for k in range(d)]
        if any(t.denominator != 1 for t in val):
            raise NotIntegralAffine(f"affine extension is not integral at {x}")
        if x in alpha and tuple(int(t) for t in val) != alpha[x]:
            raise NotIntegralAffine(f"given value at {x} is not affine in the vertex images")
    v = tuple(min(Ai[k] for Ai in A) for k in range(d))
    beta = tuple(tuple((Ai[k] - v[k]) // c for k in range(d)) for Ai in A)
    fac = AffineFactorization(v, beta, c)
    for x in S.lattice_points:
        if x in alpha and fac(x) != alpha[x]:
            raise NotIntegralAffine(f"round trip failed at {x}")
    for Ai, b in zip(A, beta):
        if tuple(vk + c * bk for vk, bk in zip(v, b)) != Ai:
            raise NotIntegralAffine("vertex images are not congruent modulo c")
    return fac


@dataclass
class VeroneseDecomposition:
    """f(x) = t_x * psi * prod eta_i^{a_i(x)} for x in L_{c Delta_n}."""

    source: LatticePolytope
    target: LatticePolytope
    c: int
    psi: LaurentPoly
    eta: list
    t: dict

    def image(self, x) -> LaurentPoly:
        out = self.psi.scale(self.t[x])
        for e, a in zip(self.eta, barycentric(x, self.c)):
            out = out * e**a
        return out

    def recompose(self) -> GradedHom:
        return GradedHom.from_laurent(
            self.source, self.target, {x: self.image(x) for x in self.source.lattice_points},
            self.psi.field,
        )

    def to_json(self):
        f = self.psi.field
        return {
            "c": self.c,
            "psi": self.psi.to_str(),
            "eta": [e.to_str() for e in self.eta],
            "t": [{"x": list(x), "t": f.format(s)} for x, s in sorted(self.t.items())],
            "psi_terms": self.psi.to_json(),
            "eta_terms": [e.to_json() for e in self.eta],
        }


def decompose_veronese(f: GradedHom, absorb_scalars: bool = True) -> VeroneseDecomposition:
    """Write a map out of k[c Delta_n] as a constant part times a blown-up linear part.

    psi is the monic gcd of the images (times a monomial), eta_i the monic
    c-th roots at the vertices (times a monomial), and t the leftover
    scalars.  With ``absorb_scalars`` the scalars are moved into the eta_i,
    which needs a c-th root of t at c*x_0 in the field (ScalarRootMissing
    otherwise), leaving t = 1.
    """
    P = f.source
    n, c = _simplex_params(P)
    _check_no_zero_images(f)
    field = f.field
    dim = f.target.ambient_dim
    L = P.lattice_points
    verts = [(0,) * n] + [tuple(c * int(i == j) for j in range(n)) for i in range(n)]

    s, mu, p = {}, {}, {}
    for x in L:
        phi = f.image(x)
        s[x] = phi.leading_coefficient()
        a, rest = phi.monic().split_monomial()
        mu[x], p[x] = a, rest
    m = tuple(min(mu[x][k] for x in L) for k in range(dim))
    fac = factor_affine({x: _sub(mu[x], m) for x in L}, c)
    g = laurent_gcd(list(p.values()))
    psi = g.shift(_add(m, fac.v))
    eta = []
    for i, v in enumerate(verts):
        root = laurent_nth_root(laurent_exact_div(p[v], g), c)
        eta.append(root.shift(fac.beta[i]))
    t = dict(s)

    if absorb_scalars:
        tau0 = field.nth_root(t[verts[0]], c)
        if tau0 is None:
            raise ScalarRootMissing(
                f"{field.format(t[verts[0]])} has no root of order {c} in {field.name}")
        taus = [tau0]
        for i in range(1, n + 1):
            # the lattice point (c-1) x_0 + x_i
            xi = tuple(int(j == i - 1) for j in range(n))
            taus.append(t[xi] / tau0 ** (c - 1))
        eta = [e.scale(tau) for e, tau in zip(eta, taus)]
        for x in L:
            scale = field.one
            for tau, a in zip(taus, barycentric(x, c)):
                scale = scale * tau**a
            t[x] = t[x] / scale

    dec = VeroneseDecomposition(P, f.target, c, psi, eta, t)
    for x in L:
        if dec.image(x) != f.image(x):
            raise ArithmeticError(f"recomposition differs at {x}")
    return dec
