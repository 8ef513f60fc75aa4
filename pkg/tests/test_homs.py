import random
from itertools import combinations_with_replacement

import pytest
import sympy
from hypothesis import given, strategies as st

from polylin.arith import GF, QQ, ExactMatrix, use_field
from polylin.automorphisms import column_vectors, elementary
from polylin.catalog import CORE, DELTA1, DELTA2, SQ, T1, T2, TWO_DELTA1
from polylin.errors import ImageEscapesTarget, ShapeMismatch
from polylin.homs import (
    GradedHom,
    compose,
    degree1_rank,
    hom_equations,
    is_homomorphism,
    is_idempotent,
    tangent_dim,
)
from polylin.random_maps import random_automorphism
from polylin.tame import face_inclusion, face_retraction
from polylin.geometry import LatticePolytope

# Markov degrees, taken as known inputs: T2 needs cubics, the rest quadrics
MARKOV = {T2: 3}


def oracle_relations(P, D):
    groups = {}
    for e in range(2, D + 1):
        for ms in combinations_with_replacement(P.lattice_points, e):
            groups.setdefault((e, tuple(map(sum, zip(*ms)))), []).append(ms)
    return [(g[0], other) for g in groups.values() for other in g[1:]]


def sympy_system(P, Q, D):
    """Expand the pushed-forward relations with sympy and collect coefficients."""
    X = {(x, y): sympy.Symbol(f"X_{P.index(x)}_{Q.index(y)}")
         for x in P.lattice_points for y in Q.lattice_points}
    t = sympy.symbols(f"t0:{Q.ambient_dim}")
    low = [min(y[i] for y in Q.lattice_points) for i in range(Q.ambient_dim)]

    def img(x):
        # shifted to nonnegative exponents so sympy sees a polynomial
        return sum(X[x, y] * sympy.Mul(*[ti ** (yi - li) for ti, yi, li in zip(t, y, low)])
                   for y in Q.lattice_points)

    eqs = set()
    for left, right in oracle_relations(P, D):
        diff = sympy.expand(sympy.Mul(*map(img, left)) - sympy.Mul(*map(img, right)))
        for c in sympy.Poly(diff, *t).coeffs():
            if c != 0:
                eqs.add(sympy.expand(c))
    return X, eqs


@pytest.mark.parametrize("P,Q,count", [(SQ, SQ, 9), (SQ, DELTA1, 3)])
def test_equation_counts(P, Q, count):
    _, eqs = sympy_system(P, Q, 2)
    assert len(eqs) == count
    assert len(hom_equations(P, Q)) == count


@pytest.mark.parametrize("P,expected", list(zip(CORE, [4, 9, 4, 7, 8, 3])))
def test_tangent_dim_matches_sympy_jacobian(P, expected):
    X, eqs = sympy_system(P, P, MARKOV.get(P, 2))
    syms = list(X.values())
    at_id = {X[x, y]: int(x == y) for (x, y) in X}
    m = P.n_points
    if eqs:
        J = sympy.Matrix([[sympy.diff(e, s) for s in syms] for e in eqs]).subs(at_id)
        oracle = m * m - J.rank()
    else:
        oracle = m * m
    assert oracle == expected
    assert tangent_dim(P) == expected


def test_square_jacobian_rank_nine():
    eqs = hom_equations(SQ, SQ)
    assert sympy.Matrix(eqs.jacobian_at(ExactMatrix.identity(4, QQ)).rows).rank() == 9


def test_equations_are_integer_and_field_free():
    with use_field(QQ):
        a = hom_equations(SQ, SQ).to_json()
    with use_field(GF(5)):
        b = hom_equations(SQ, SQ).to_json()
    assert a == b
    assert all(isinstance(t["coeff"], int) for p in a["polys"] for t in p)


def test_identity_and_zero_are_homs():
    for P in CORE:
        assert is_homomorphism(GradedHom.identity(P))
        assert hom_equations(P, P).vanishes_at(ExactMatrix.identity(P.n_points))


def test_non_homomorphism_detected():
    # swap two lattice points of SQ that do not come from a symmetry
    images = {(0, 0): {(0, 0): 1}, (0, 1): {(1, 0): 1}, (1, 0): {(1, 1): 1}, (1, 1): {(0, 1): 1}}
    f = GradedHom.from_images(SQ, SQ, images, QQ)
    assert not is_homomorphism(f)
    assert not hom_equations(SQ, SQ).vanishes_at(f.matrix)


def test_t2_needs_cubic_relations():
    # the quadrics alone do not cut out Hom(k[T2], k[T2])
    assert len(hom_equations(T2, T2, D=2)) < len(hom_equations(T2, T2))


def test_from_images_rejects_escape():
    with pytest.raises(ImageEscapesTarget) as e:
        GradedHom.from_images(DELTA1, DELTA1, {(0,): {(5,): 1}}, QQ)
    assert e.value.monomial == (5,)


def test_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        GradedHom(SQ, DELTA1, ExactMatrix.zeros(4, 2, QQ))
    with pytest.raises(ShapeMismatch):
        compose(GradedHom.identity(SQ), GradedHom.identity(DELTA1))


def test_json_round_trip_and_images_form():
    rng = random.Random(3)
    f = random_automorphism(SQ, rng, QQ)
    assert GradedHom.from_json(f.to_json(), QQ) == f
    data = {"source": DELTA1.to_json(), "target": DELTA1.to_json(),
            "images": [{"x": [0], "image": [{"exponents": [0], "coeff": "2"}]},
                       {"x": [1], "image": [{"exponents": [1], "coeff": "1/2"}]}]}
    g = GradedHom.from_json(data, QQ)
    assert g.matrix == ExactMatrix([[2, 0], [0, "1/2"]], 2, QQ)


def test_rank_and_idempotence():
    F = LatticePolytope([(0, 0), (1, 0)])
    rho = face_retraction(SQ, F, QQ)
    iota = face_inclusion(SQ, F, QQ)
    e = compose(iota, rho)
    assert degree1_rank(e) == (2, False, False)
    assert degree1_rank(GradedHom.identity(SQ)) == (4, True, True)
    assert is_idempotent(e)
    assert not is_idempotent(elementary(SQ, column_vectors(SQ)[0], 1, QQ))


# -- invariants -------------------------------------------------------------

seeds = st.integers(0, 10 ** 6)


@given(seeds, st.sampled_from([SQ, T1, DELTA2, TWO_DELTA1]))
def test_equations_agree_with_relations_over_f5(seed, P):
    rng = random.Random(seed)
    F = GF(5)
    with use_field(F):
        eqs = hom_equations(P, P)
        f = random_automorphism(P, rng, F)
        M = f.matrix
        if rng.random() < 0.5:
            rows = [list(r) for r in M.rows]
            i, j = rng.randrange(M.nrows), rng.randrange(M.ncols)
            rows[i][j] += F(rng.randrange(1, 5))
            M = ExactMatrix(rows, M.ncols, F)
        assert eqs.vanishes_at(M) == is_homomorphism(GradedHom(P, P, M))


@given(seeds, st.sampled_from([SQ, T1, DELTA2]))
def test_composition_of_homs_is_hom(seed, P):
    rng = random.Random(seed)
    f = random_automorphism(P, rng, QQ)
    g = random_automorphism(P, rng, QQ)
    h = compose(g, f)
    assert h.matrix == g.matrix @ f.matrix
    assert is_homomorphism(h)
    assert hom_equations(P, P).vanishes_at(h.matrix)
