"""Seeded random maps for the property tests and the verify command.

Everything takes a ``random.Random`` so results are reproducible from a
seed; nothing here touches the global RNG.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .arith.fields import QQ, current_field
from .arith.laurent import grlex_key
from .arith.matrix import ExactMatrix
from .automorphisms import column_vectors, compose_normal_form, symmetries
from .geometry import AffineLatticeMap, LatticePolytope, dilate, simplex, translate
from .homs import GradedHom
from .recipe import TameRecipe
from .tame import barycentric

SMALL = (-3, -2, -1, 1, 2, 3)


def rng_from(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_scalar(rng, field=None, nonzero=True):
    field = field or current_field()
    if field is QQ or field == QQ:
        pool = SMALL if nonzero else SMALL + (0,)
        return field(rng.choice(pool))
    lo = 1 if nonzero else 0
    return field(rng.randrange(lo, field.p))


def random_matrix(nrows, ncols, rng, field=None) -> ExactMatrix:
    field = field or current_field()
    return ExactMatrix([[random_scalar(rng, field, nonzero=False) for _ in range(ncols)]
                        for _ in range(nrows)], ncols, field)


def random_automorphism(P: LatticePolytope, rng, field=None, max_blocks=2) -> GradedHom:
    """alpha_1 ... alpha_r tau sigma with random ingredients."""
    field = field or current_field()
    sym = rng.choice(symmetries(P))
    tau = [random_scalar(rng, field) for _ in range(P.ambient_dim + 1)]
    cols = column_vectors(P)
    by_facet = {}
    for col in cols:
        by_facet.setdefault(col.base_facet, []).append(col)
    facets = list(by_facet)
    rng.shuffle(facets)
    chosen = facets[: rng.randint(0, min(max_blocks, len(facets)))]
    chosen.sort(key=lambda i: (len(P.facets[i].lattice_points), i))
    blocks = []
    for i in chosen:
        lams = {col: random_scalar(rng, field, nonzero=False) for col in by_facet[i]}
        blocks.append((i, lams))
    return compose_normal_form(P, sym, tau, blocks, field)


def random_polynomial(support, rng, field=None, lead=None) -> dict:
    """Random nonzero coefficients on a random nonempty subset of ``support``.

    ``lead`` fixes the coefficient of the grlex-leading exponent.
    """
    field = field or current_field()
    support = list(support)
    k = rng.randint(1, len(support))
    pts = rng.sample(support, k)
    poly = {tuple(y): random_scalar(rng, field) for y in pts}
    if lead is not None:
        top = max(poly, key=grlex_key)
        poly[top] = field(lead)
    return poly


def random_polynomial_source_map(n, Q, rng, field=None) -> GradedHom:
    """Any map out of the polynomial ring k[Delta_n], with no zero columns."""
    field = field or current_field()
    P = simplex(n)
    images = {x: random_polynomial(Q.lattice_points, rng, field) for x in P.lattice_points}
    return GradedHom.from_images(P, Q, images, field, verified=True)


def _free_chain(n, target: LatticePolytope, qs):
    """Free extensions from the unit map k -> k[target] up to k[Delta_n] -> k[target]."""
    r = TameRecipe.polytope_change(TameRecipe.identity_k(n), target=target)
    for i, q in enumerate(qs):
        P = simplex(i, ambient_dim=n)
        apex = (0,) * n if i == 0 else tuple(int(j == i - 1) for j in range(n))
        r = TameRecipe.free_extension(r, P, apex, q)
    return r


def random_veronese_recipe(n: int, c: int, rng, field=None, target_dim=None) -> TameRecipe:
    """A tame map out of k[c Delta_n]: a polytope change of Psi * Theta^(c).

    Theta sends x_i to a random eta_i on Q, Psi sends every lattice point
    to one random psi.  The leading coefficient of psi is a c-th power so
    the scalars can be absorbed over Q.
    """
    field = field or current_field()
    d = target_dim or rng.choice((1, 2))
    if d == 1:
        a, b = rng.randint(1, 2), rng.randint(0, 2)
        Q = LatticePolytope([(0,), (a,)])
        box = LatticePolytope([(0,), (b,)])
        R = LatticePolytope([(0,), (c * a + b,)])
    else:
        Q = LatticePolytope([(0, 0), (1, 0), (0, 1), (1, 1)])
        box = Q
        R = dilate(Q, c + 1)
    etas = [random_polynomial(Q.lattice_points, rng, field) for _ in range(n + 1)]
    lead = rng.choice((1, 4, 9, Fraction(1, 4))) ** (c // 2) if c % 2 == 0 else 1
    psi = random_polynomial(box.lattice_points, rng, field, lead=lead)

    theta = _free_chain(n, Q, etas)
    theta_c = TameRecipe.polytope_change(TameRecipe.homothetic_blowup(theta, c), target=R)

    point = LatticePolytope([(0,) * d])
    to_t = _free_chain(n, point, [{(0,) * d: 1}] * (n + 1))
    t_to_psi = TameRecipe.free_extension(
        TameRecipe.polytope_change(TameRecipe.identity_k(d), target=R), point, (0,) * d, psi)
    psi_map = TameRecipe.compose(t_to_psi, TameRecipe.homothetic_blowup(to_t, c))

    star = TameRecipe.minkowski_star(psi_map, theta_c)
    shift = tuple(rng.randint(-1, 1) for _ in range(d))
    tmap = AffineLatticeMap(tuple(tuple(int(i == j) for j in range(d)) for i in range(d)), shift)
    return TameRecipe.polytope_change(star, target=translate(R, shift), target_map=tmap)


def random_affine_on_simplex(n: int, c: int, d: int, rng, bound=4):
    """alpha = v + sum a_i beta_i on all lattice points of c Delta_n, values in Z_+^d."""
    v = tuple(rng.randint(0, bound) for _ in range(d))
    beta = [tuple(rng.randint(0, bound) for _ in range(d)) for _ in range(n + 1)]
    S = simplex(n, c)
    alpha = {}
    for x in S.lattice_points:
        a = barycentric(x, c)
        alpha[x] = tuple(v[k] + sum(ai * b[k] for ai, b in zip(a, beta)) for k in range(d))
    return alpha
