"""Exact polytopal linear algebra: polytopal algebras k[P] and their graded maps."""

from .arith import GF, QQ, ExactMatrix, LaurentPoly, current_field, use_field
from .automorphisms import (
    ColumnStructure,
    Symmetry,
    column_count,
    column_vectors,
    compose_normal_form,
    elementary,
    height,
    predicted_gamma_dim,
    symmetries,
    toric,
)
from .geometry import (
    AffineLatticeMap,
    LatticePolytope,
    dilate,
    faces,
    is_face,
    is_normalized,
    is_pyramid,
    minkowski_sum,
    newton_polytope,
    normalize_lattice,
    simplex,
)
from .homs import (
    GradedHom,
    HomEquations,
    compose,
    degree1_rank,
    hom_equations,
    is_homomorphism,
    is_idempotent,
    tangent_dim,
)
from .recipe import TameRecipe, evaluate_recipe
from .semigroup import (
    BinomialRelation,
    GradedMonomial,
    binomial_relations,
    default_relation_degree,
    degree_piece,
    hilbert,
    is_generated_in_degree,
    normalization_degree_piece,
)
from .tame import (
    Fibration,
    base_inclusion,
    decompose_veronese,
    detect_segmental_fibrations,
    face_inclusion,
    face_retraction,
    factor_affine,
    fibration_retraction,
    free_extension,
    homothetic_blowup,
    identity_k,
    minkowski_star,
    polytope_change,
)

__version__ = "0.1.0"
