import json
import random

import pytest
from hypothesis import given, strategies as st

from polylin.arith import GF, QQ, ExactMatrix, use_field
from polylin.automorphisms import column_vectors, elementary
from polylin.catalog import DELTA1, SQ, TWO_DELTA1
from polylin.errors import NotAPyramid, RecipeError
from polylin.geometry import LatticePolytope, simplex
from polylin.homs import GradedHom, is_homomorphism
from polylin.random_maps import (
    random_automorphism,
    random_polynomial_source_map,
    random_veronese_recipe,
)
from polylin.recipe import TameRecipe, evaluate_recipe
from polylin.tame import decompose_veronese

seeds = st.integers(0, 10 ** 6)
POINT = LatticePolytope([(0,)])


def delta1_recipe(q0, q1, target=SQ):
    r = TameRecipe.polytope_change(TameRecipe.identity_k(1), target=target)
    r = TameRecipe.free_extension(r, POINT, (0,), q0)
    return TameRecipe.free_extension(r, DELTA1, (1,), q1)


def test_leaf_identity():
    f = evaluate_recipe(TameRecipe.identity_k(), QQ)
    assert f.matrix.shape == (0, 0)


def test_two_free_extensions_give_any_map():
    r = delta1_recipe({(0, 0): 2, (1, 1): -1}, {(0, 1): 3})
    f = evaluate_recipe(r, QQ)
    assert f.column((0,)) == {(0, 0): 2, (1, 1): -1}
    assert f.column((1,)) == {(0, 1): 3}


def test_blowup_then_change_is_elementary():
    e = elementary(DELTA1, column_vectors(DELTA1)[0], 2, QQ)
    r = TameRecipe.polytope_change(TameRecipe.homothetic_blowup(TameRecipe.base(e), 2),
                                   target=TWO_DELTA1)
    f = evaluate_recipe(r, QQ)
    assert f == elementary(TWO_DELTA1, column_vectors(TWO_DELTA1)[0], 2, QQ)


def test_compose_and_star():
    a = TameRecipe.base(random_automorphism(SQ, random.Random(0), QQ))
    b = TameRecipe.base(random_automorphism(SQ, random.Random(1), QQ))
    f = evaluate_recipe(TameRecipe.compose(a, b), QQ)
    assert f.matrix == evaluate_recipe(a, QQ).matrix @ evaluate_recipe(b, QQ).matrix


def test_error_path():
    bad = TameRecipe.free_extension(TameRecipe.base(GradedHom.identity(DELTA1, QQ)),
                                    SQ, (1, 1), {(0, 0): 1})
    r = TameRecipe.compose(TameRecipe.base(GradedHom.identity(SQ, QQ)), bad)
    with pytest.raises(RecipeError) as e:
        evaluate_recipe(r, QQ)
    assert e.value.path == ("compose", 1, "free_extension")
    assert isinstance(e.value.cause, NotAPyramid)


def test_rejects_non_homomorphism_leaf():
    swap = {(0, 0): {(0, 0): 1}, (0, 1): {(1, 0): 1}, (1, 0): {(1, 1): 1}, (1, 1): {(0, 1): 1}}
    leaf = TameRecipe.base(GradedHom.from_images(SQ, SQ, swap, QQ))
    with pytest.raises(RecipeError):
        evaluate_recipe(leaf, QQ)


def test_unknown_op_and_arity():
    with pytest.raises(RecipeError):
        evaluate_recipe(TameRecipe("teleport"), QQ)
    with pytest.raises(RecipeError):
        evaluate_recipe(TameRecipe("compose", {}, (TameRecipe.identity_k(),)), QQ)


@given(seeds, st.integers(1, 2), st.integers(2, 3))
def test_recipe_json_round_trip(seed, n, c):
    r = random_veronese_recipe(n, c, random.Random(seed), QQ)
    text = json.dumps(r.to_json(), sort_keys=True)
    again = TameRecipe.from_json(json.loads(text))
    assert again == r
    assert evaluate_recipe(again, QQ) == evaluate_recipe(r, QQ)


@given(seeds, st.integers(1, 2), st.sampled_from([QQ, GF(5)]))
def test_veronese_recipes_decompose(seed, n, F):
    with use_field(F):
        f = evaluate_recipe(random_veronese_recipe(n, 2, random.Random(seed), F), F)
        assert f.source == simplex(n, 2)
        assert is_homomorphism(f)
        dec = decompose_veronese(f, absorb_scalars=F == QQ)
        assert dec.recompose() == f


@given(seeds, st.integers(1, 3))
def test_polynomial_source_is_unconstrained(seed, n):
    f = random_polynomial_source_map(n, SQ, random.Random(seed), QQ)
    assert is_homomorphism(f)
    assert all(f.column(x) for x in f.source.lattice_points)


def test_random_maps_reproducible():
    a = random_veronese_recipe(2, 2, random.Random(7), QQ)
    b = random_veronese_recipe(2, 2, random.Random(7), QQ)
    assert a == b
