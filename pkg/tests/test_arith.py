from fractions import Fraction

import pytest
import sympy
from sympy import GF as SGF
from sympy.polys.matrices import DomainMatrix
from hypothesis import given, strategies as st

from polylin.arith import (
    GF,
    QQ,
    ExactMatrix,
    LaurentPoly,
    kernel_basis,
    laurent_exact_div,
    laurent_gcd,
    laurent_nth_root,
    parse_field,
    rank,
    use_field,
)
from polylin.arith.intlin import hnf_basis, int_det, primitive
from polylin.errors import NoExactRoot, NotDivisible

X, Y = sympy.symbols("X Y")


def to_sympy(f: LaurentPoly):
    return sum((sympy.Rational(c.numerator, c.denominator) * X ** e[0] * Y ** e[1]
                for e, c in f.terms.items()), sympy.Integer(0))


small = st.integers(-3, 3)
exps = st.tuples(st.integers(0, 3), st.integers(0, 3))
polys = st.dictionaries(exps, small, min_size=1, max_size=5).map(
    lambda d: LaurentPoly(d, 2, QQ)).filter(lambda f: not f.is_zero())


# -- scalars ----------------------------------------------------------------

def test_fp_arithmetic():
    F = GF(5)
    a, b = F(3), F(4)
    assert a + b == F(2)
    assert a * b == F(2)
    assert a / b == F(2)
    assert -a == F(2)
    assert F(Fraction(1, 2)) == F(3)


def test_fp_rejects_denominator_divisible_by_p():
    with pytest.raises(ZeroDivisionError):
        GF(5)(Fraction(1, 5))


def test_prime_field_requires_prime():
    with pytest.raises(ValueError):
        GF(6)


def test_parse_field():
    assert parse_field("Q") == QQ
    assert parse_field("F7") == GF(7)
    assert parse_field("Fp", 11) == GF(11)
    with pytest.raises(ValueError):
        parse_field("Fp")


@pytest.mark.parametrize("a,c,root", [(4, 2, 2), (Fraction(8, 27), 3, Fraction(2, 3)),
                                      (-8, 3, -2), (2, 2, None), (-4, 2, None)])
def test_rational_roots(a, c, root):
    assert QQ.nth_root(a, c) == root


def test_fp_roots():
    F = GF(5)
    assert F.nth_root(4, 2) in (F(2), F(3))
    assert F.nth_root(2, 2) is None


def test_session_field_is_scoped():
    with use_field(GF(5)):
        assert LaurentPoly.constant(7, 1).terms[(0,)] == GF(5)(2)
    assert LaurentPoly.constant(7, 1).terms[(0,)] == 7


# -- Laurent polynomials ----------------------------------------------------

@given(polys, polys)
def test_product_matches_sympy(f, g):
    assert sympy.expand(to_sympy(f * g) - to_sympy(f) * to_sympy(g)) == 0


@given(polys, polys)
def test_exact_division_inverts_product(f, g):
    q = laurent_exact_div((f * g).shift((-1, 2)), g)
    assert q == f.shift((-1, 2))


def test_exact_division_failure():
    f = LaurentPoly({(1, 0): 1, (0, 0): 1}, 2, QQ)
    g = LaurentPoly({(0, 1): 1, (0, 0): 1}, 2, QQ)
    with pytest.raises(NotDivisible):
        laurent_exact_div(f, g)


@given(polys, st.integers(1, 3))
def test_nth_root_of_power(f, c):
    f = f.monic()
    assert laurent_nth_root(f ** c, c) == f


def test_nth_root_rejects_non_power():
    with pytest.raises(NoExactRoot):
        laurent_nth_root(LaurentPoly({(2, 0): 1, (0, 0): 1}, 2, QQ), 2)
    with pytest.raises(NoExactRoot):
        laurent_nth_root(LaurentPoly({(1, 0): 1}, 2, QQ), 2)


@given(polys, polys, polys)
def test_gcd_matches_sympy(f, g, h):
    ours = laurent_gcd([f * h, g * h])
    theirs = sympy.Poly(sympy.gcd(to_sympy(f * h), to_sympy(g * h)), X, Y)
    # sympy keeps monomial factors; ours strips them and normalizes to monic
    _, p = LaurentPoly({m: Fraction(str(c)) for m, c in theirs.terms()}, 2, QQ).split_monomial()
    assert ours == p.monic()


def test_split_monomial():
    f = LaurentPoly({(2, 1): 3, (1, 3): 1}, 2, QQ)
    a, p = f.split_monomial()
    assert a == (1, 1)
    assert p == LaurentPoly({(1, 0): 3, (0, 2): 1}, 2, QQ)


def test_json_round_trip():
    f = LaurentPoly({(2, -1): Fraction(1, 3), (0, 0): -2}, 2, QQ)
    assert LaurentPoly.from_json(f.to_json(), 2, QQ) == f


# -- matrices ---------------------------------------------------------------

mats = st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=4)


@given(mats)
def test_rank_matches_sympy(rows):
    assert rank(ExactMatrix(rows, 4, QQ)) == sympy.Matrix(rows).rank()


@given(mats)
def test_kernel_is_annihilated(rows):
    M = ExactMatrix(rows, 4, QQ)
    K = kernel_basis(M)
    assert len(K) == 4 - rank(M)
    for v in K:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in M.rows)


@given(mats)
def test_rank_over_f5_matches_sympy(rows):
    dm = DomainMatrix([[SGF(5)(x) for x in r] for r in rows], (len(rows), 4), SGF(5))
    assert rank(ExactMatrix(rows, 4, GF(5))) == dm.rank()


def test_inverse_and_singular():
    M = ExactMatrix([[2, 1], [1, 1]], 2, QQ)
    assert M @ M.inverse() == ExactMatrix.identity(2, QQ)
    with pytest.raises(ZeroDivisionError):
        ExactMatrix([[1, 2], [2, 4]], 2, QQ).inverse()


# -- integer lattices -------------------------------------------------------

def test_primitive_and_det():
    assert primitive((4, -6)) == (2, -3)
    assert int_det([[2, 1], [1, 1]]) == 1


@given(st.lists(st.tuples(small, small, small), min_size=1, max_size=4))
def test_hnf_spans_same_lattice(vectors):
    B = hnf_basis(vectors, 3)
    rk = sympy.Matrix(vectors).rank()
    assert len(B) == rk
    if rk:
        # same lattice: each generator set expresses the other with integer coefficients
        MB = sympy.Matrix(B).T
        for v in vectors:
            sol = MB.gauss_jordan_solve(sympy.Matrix(v))[0]
            assert all(x.is_integer for x in sol)
