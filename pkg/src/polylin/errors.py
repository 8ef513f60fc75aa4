"""Exception hierarchy.

Every domain error carries a short machine-readable ``code`` so the CLI can
emit ``{"error": code, "detail": ...}`` without guessing.
"""


class PolylinError(Exception):
    code = "domain_error"

    def detail(self):
        return str(self)


class DimensionMismatch(PolylinError, ValueError):
    code = "dimension_mismatch"


class NotDivisible(PolylinError, ArithmeticError):
    code = "not_divisible"


class NoExactRoot(PolylinError, ArithmeticError):
    code = "no_exact_root"


class NotAFace(PolylinError, ValueError):
    code = "not_a_face"


class NotAColumn(PolylinError, ValueError):
    code = "not_a_column"


class NotALatticePoint(PolylinError, ValueError):
    code = "not_a_lattice_point"


class InvalidScalar(PolylinError, ValueError):
    code = "invalid_scalar"


class ShapeMismatch(PolylinError, ValueError):
    code = "shape_mismatch"


class NotAHomomorphism(PolylinError, ValueError):
    code = "not_a_homomorphism"


class NormalFormError(PolylinError, ValueError):
    code = "normal_form_error"


class InvalidFibration(PolylinError, ValueError):
    code = "invalid_fibration"


class NotAPyramid(PolylinError, ValueError):
    code = "not_a_pyramid"


class ZeroGeneratorImage(PolylinError, ValueError):
    """A degree-one lattice point is sent to zero.

    ``face`` holds the face spanned by the lattice points with nonzero image
    (None if every generator dies); the caller should factor through the
    face retraction onto it and recurse.
    """

    code = "zero_generator_image"

    def __init__(self, msg, points=(), face=None):
        super().__init__(msg)
        self.points = tuple(points)
        self.face = face


class WitnessNotFound(PolylinError, ValueError):
    code = "witness_not_found"


class NewtonContainmentViolated(PolylinError, ValueError):
    code = "newton_containment_violated"

    def __init__(self, msg, point=None):
        super().__init__(msg)
        self.point = point


class ImageEscapesTarget(PolylinError, ValueError):
    code = "image_escapes_target"

    def __init__(self, msg, point=None, monomial=None):
        super().__init__(msg)
        self.point = point
        self.monomial = monomial


class NotIntegralAffine(PolylinError, ValueError):
    code = "not_integral_affine"


class ScalarRootMissing(PolylinError, ArithmeticError):
    code = "scalar_root_missing"


class RecipeError(PolylinError):
    """Failure while evaluating a recipe node; ``path`` locates the node."""

    code = "recipe_error"

    def __init__(self, path, cause):
        self.path = tuple(path)
        self.cause = cause
        where = "/".join(str(p) for p in self.path) or "<root>"
        super().__init__(f"at {where}: {type(cause).__name__}: {cause}")
