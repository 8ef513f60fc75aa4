import random
from fractions import Fraction
from itertools import permutations, product

import pytest
import sympy
from hypothesis import given, strategies as st

from polylin.arith import GF, QQ, ExactMatrix
from polylin.automorphisms import (
    ColumnStructure,
    block,
    column_count,
    column_vectors,
    compose_normal_form,
    elementary,
    height,
    predicted_gamma_dim,
    symmetries,
    toric,
)
from polylin.catalog import CATALOG, DELTA1, DELTA2, SQ, T1, T2, TWO_DELTA1
from polylin.errors import InvalidScalar, NormalFormError, NotALatticePoint, NotAColumn
from polylin.homs import GradedHom, compose, degree1_rank, is_homomorphism, tangent_dim
from polylin.random_maps import random_automorphism

POS = sorted(n for n, P in CATALOG.items() if P.dim >= 1)
polytopes = st.sampled_from(POS).map(CATALOG.get)
LAMS = st.sampled_from([0, 1, -1, 2, -2, Fraction(1, 2)])


def oracle_columns(P):
    """Scan a box of vectors against every facet, by membership alone."""
    L = set(P.lattice_points)
    w = max(max(x[i] for x in L) - min(x[i] for x in L) for i in range(P.ambient_dim))
    out = set()
    for v in product(range(-w, w + 1), repeat=P.ambient_dim):
        if not any(v):
            continue
        for F in P.facets:
            off = [x for x in L if sum(a * b for a, b in zip(F.normal, x)) != F.offset]
            if all(tuple(a + b for a, b in zip(x, v)) in L for x in off):
                out.add((v, F.normal))
    return out


def oracle_symmetries(P):
    """Vertex permutations realized by an integral affine map of det +-1."""
    V = [sympy.Matrix(v) for v in P.vertices]
    n = P.dim
    count = 0
    for perm in permutations(range(len(V))):
        A = sympy.Matrix.hstack(*[V[k] - V[0] for k in range(1, n + 1)])
        B = sympy.Matrix.hstack(*[V[perm[k]] - V[perm[0]] for k in range(1, n + 1)])
        if A.det() == 0:
            continue
        M = B * A.inv()
        t = V[perm[0]] - M * V[0]
        if not all(x.is_integer for x in list(M) + list(t)) or abs(M.det()) != 1:
            continue
        if all(M * V[k] + t == V[perm[k]] for k in range(len(V))):
            count += 1
    return count


@pytest.mark.parametrize("name", POS)
def test_columns_match_box_oracle(name):
    P = CATALOG[name]
    ours = {(c.v, P.facets[c.base_facet].normal) for c in column_vectors(P)}
    assert ours == oracle_columns(P)


def test_column_examples():
    assert {c.v for c in column_vectors(SQ)} == {(1, 0), (-1, 0), (0, 1), (0, -1)}
    assert column_vectors(T2) == []
    assert {c.v for c in column_vectors(T1)} == {(1, 0), (-1, 0), (1, -1), (0, -1), (-1, -1)}
    assert [column_count(P) for P in (SQ, T1, T2, DELTA2)] == [4, 5, 0, 6]


def test_heights():
    down = next(c for c in column_vectors(SQ) if c.v == (0, -1))
    assert height(SQ, down, (0, 1)) == 1
    assert height(SQ, down, (0, 0)) == 0
    col = column_vectors(TWO_DELTA1)[0]
    assert col.v == (-1,)
    assert height(TWO_DELTA1, col, (2,)) == 2
    with pytest.raises(NotALatticePoint):
        height(SQ, down, (5, 5))


def test_elementary_examples():
    col = ColumnStructure((-1,), 1)
    assert col in column_vectors(DELTA1)
    e = elementary(DELTA1, col, 3, QQ)
    assert e.matrix == ExactMatrix([[1, 3], [0, 1]], 2, QQ)
    down = next(c for c in column_vectors(SQ) if c.v == (0, -1))
    e = elementary(SQ, down, 1, QQ)
    assert e.column((0, 1)) == {(0, 0): 1, (0, 1): 1}
    assert e.column((1, 1)) == {(1, 0): 1, (1, 1): 1}
    assert e.column((0, 0)) == {(0, 0): 1}
    lam = Fraction(5)
    e2 = elementary(TWO_DELTA1, column_vectors(TWO_DELTA1)[0], lam, QQ)
    assert e2.column((2,)) == {(2,): 1, (1,): 2 * lam, (0,): lam ** 2}


def test_elementary_rejects_non_column():
    with pytest.raises(NotAColumn):
        elementary(SQ, ColumnStructure((1, 1), 0), 1, QQ)


def test_toric_examples():
    assert toric(DELTA1, [2, 3], QQ).matrix == ExactMatrix([[3, 0], [0, 6]], 2, QQ)
    assert toric(SQ, [1, 1, 1], QQ) == GradedHom.identity(SQ, QQ)
    z = toric(SQ, [1, 1, 5], QQ)
    assert z.matrix == ExactMatrix.identity(4, QQ).scale(5)
    with pytest.raises(InvalidScalar):
        toric(SQ, [1, 0, 1], QQ)
    with pytest.raises(InvalidScalar):
        toric(SQ, [1, 1], QQ)


@pytest.mark.parametrize("P,count", [(DELTA2, 6), (SQ, 8), (T2, 6), (T1, 2), (DELTA1, 2)])
def test_symmetry_counts(P, count):
    assert len(symmetries(P)) == count == oracle_symmetries(P)


def test_symmetries_identity_first_and_homs():
    for name in POS:
        P = CATALOG[name]
        syms = symmetries(P)
        assert syms[0].permutation == tuple(range(P.n_points))
        for s in syms:
            h = s.hom(P, QQ)
            assert is_homomorphism(h)
            assert degree1_rank(h)[0] == P.n_points


@pytest.mark.parametrize("P,expected", [(SQ, 7), (T2, 3), (DELTA2, 9)])
def test_predicted_dimension(P, expected):
    assert predicted_gamma_dim(P) == expected


@pytest.mark.parametrize("name", POS)
def test_dimension_formula_on_catalog(name):
    P = CATALOG[name]
    assert tangent_dim(P) == predicted_gamma_dim(P)


def _bottom_block(P):
    i = next(k for k, F in enumerate(P.facets) if F.normal == (0, 1))
    return i, [c for c in column_vectors(P) if c.base_facet == i]


def test_t1_bottom_block_order_free():
    i, cols = _bottom_block(T1)
    assert len(cols) == 3
    ref = block(T1, i, {c: 1 for c in cols}, QQ)
    for order in permutations(cols):
        m = GradedHom.identity(T1, QQ)
        for c in order:
            m = compose(m, elementary(T1, c, 1, QQ))
        assert m == ref


def test_block_inverse_law():
    i, cols = _bottom_block(T1)
    fwd = block(T1, i, {c: l for c, l in zip(cols, (1, 2, -1))}, QQ)
    back = block(T1, i, {c: -l for c, l in zip(cols, (1, 2, -1))}, QQ)
    assert compose(fwd, back) == GradedHom.identity(T1, QQ)


def test_normal_form_trivial_and_errors():
    assert compose_normal_form(SQ, field=QQ) == GradedHom.identity(SQ, QQ)
    c = column_vectors(SQ)[0]
    with pytest.raises(NormalFormError):
        compose_normal_form(SQ, blocks=[(c.base_facet, {c: 1}), (c.base_facet, {c: 1})], field=QQ)
    with pytest.raises(NormalFormError):
        compose_normal_form(SQ, blocks=[(99, {})], field=QQ)
    wrong = (c.base_facet + 1) % 4
    with pytest.raises(NormalFormError):
        compose_normal_form(SQ, blocks=[(wrong, {c: 1})], field=QQ)
    # T1: the bottom facet has 3 points, the others 2
    i, cols = _bottom_block(T1)
    j = next(k for k in range(3) if k != i)
    with pytest.raises(NormalFormError):
        compose_normal_form(T1, blocks=[(i, {}), (j, {})], field=QQ)
    compose_normal_form(T1, blocks=[(j, {}), (i, {})], field=QQ)


# -- invariants -------------------------------------------------------------

@given(polytopes, st.data(), LAMS, LAMS)
def test_one_parameter_law(P, data, lam, mu):
    cols = column_vectors(P)
    if not cols:
        return
    c = data.draw(st.sampled_from(cols))
    assert compose(elementary(P, c, lam, QQ), elementary(P, c, mu, QQ)) == \
        elementary(P, c, lam + mu, QQ)


@given(polytopes, st.data(), LAMS, LAMS)
def test_same_facet_commute(P, data, lam, mu):
    cols = column_vectors(P)
    if not cols:
        return
    c1 = data.draw(st.sampled_from(cols))
    c2 = data.draw(st.sampled_from([c for c in cols if c.base_facet == c1.base_facet]))
    a, b = elementary(P, c1, lam, QQ), elementary(P, c2, mu, QQ)
    assert compose(a, b) == compose(b, a)


@given(polytopes, st.data(), LAMS)
def test_elementaries_are_invertible_homs(P, data, lam):
    cols = column_vectors(P)
    if not cols:
        return
    e = elementary(P, data.draw(st.sampled_from(cols)), lam, QQ)
    assert is_homomorphism(e)
    assert degree1_rank(e)[0] == P.n_points


@given(st.sampled_from([SQ, T1, T2, DELTA2]), st.integers(0, 10 ** 6),
       st.sampled_from([QQ, GF(5), GF(7)]))
def test_random_normal_forms_are_automorphisms(P, seed, F):
    f = random_automorphism(P, random.Random(seed), F)
    assert is_homomorphism(f)
    assert degree1_rank(f)[0] == P.n_points
