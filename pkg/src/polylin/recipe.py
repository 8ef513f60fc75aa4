"""Expression trees over the tame constructors, with JSON round trip.

A recipe node is ``{"op": name, "args": {...}, "children": [...]}``.  Args
are kept in their JSON form so a recipe is always serializable; they are
parsed when the tree is evaluated.  ``compose`` with children ``[g, f]``
means g o f.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .arith.fields import current_field
from .errors import NotAHomomorphism, PolylinError, RecipeError
from .geometry import AffineLatticeMap, LatticePolytope
from .homs import GradedHom, compose, is_homomorphism
from . import tame

OPS = ("identity_k", "base", "free_extension", "minkowski_star", "homothetic_blowup",
       "polytope_change", "compose")

_ARITY = {"identity_k": 0, "base": 0, "free_extension": 1, "minkowski_star": 2,
          "homothetic_blowup": 1, "polytope_change": 1, "compose": 2}


@dataclass(frozen=True)
class TameRecipe:
    op: str
    args: dict = dc_field(default_factory=dict)
    children: tuple = ()

    # -- builders -------------------------------------------------------------
    @classmethod
    def identity_k(cls, ambient_dim=0):
        return cls("identity_k", {"ambient_dim": ambient_dim})

    @classmethod
    def base(cls, f: GradedHom):
        return cls("base", {"hom": f.to_json()})

    @classmethod
    def free_extension(cls, child, P: LatticePolytope, apex, q):
        if not isinstance(q, list):
            q = [{"exponents": list(y), "coeff": str(a)} for y, a in dict(q).items()]
        return cls("free_extension", {"polytope": P.to_json(), "apex": list(apex), "q": q},
                   (child,))

    @classmethod
    def minkowski_star(cls, f, g):
        return cls("minkowski_star", {}, (f, g))

    @classmethod
    def homothetic_blowup(cls, child, c):
        return cls("homothetic_blowup", {"c": c}, (child,))

    @classmethod
    def polytope_change(cls, child, source=None, target=None, source_map=None, target_map=None):
        args = {}
        if source is not None:
            args["source"] = source.to_json()
        if target is not None:
            args["target"] = target.to_json()
        if source_map is not None:
            args["source_map"] = source_map.to_json()
        if target_map is not None:
            args["target_map"] = target_map.to_json()
        return cls("polytope_change", args, (child,))

    @classmethod
    def compose(cls, g, f):
        return cls("compose", {}, (g, f))

    # -- serialization -------------------------------------------------------------
    def to_json(self):
        return {"op": self.op, "args": self.args, "children": [c.to_json() for c in self.children]}

    @classmethod
    def from_json(cls, data):
        return cls(data["op"], dict(data.get("args", {})),
                   tuple(cls.from_json(c) for c in data.get("children", [])))

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)


def _eval_node(r: TameRecipe, kids, field):
    a = r.args
    if r.op == "identity_k":
        return tame.identity_k(int(a.get("ambient_dim", 0)), field)
    if r.op == "base":
        return GradedHom.from_json(a["hom"], field)
    if r.op == "free_extension":
        P = LatticePolytope.from_json(a["polytope"])
        q = {tuple(t["exponents"]): t["coeff"] for t in a["q"]}
        return tame.free_extension(kids[0], P, tuple(a["apex"]), q)
    if r.op == "minkowski_star":
        return tame.minkowski_star(kids[0], kids[1])
    if r.op == "homothetic_blowup":
        return tame.homothetic_blowup(kids[0], int(a["c"]))
    if r.op == "polytope_change":
        src = LatticePolytope.from_json(a["source"]) if "source" in a else None
        tgt = LatticePolytope.from_json(a["target"]) if "target" in a else None
        smap = AffineLatticeMap.from_json(a["source_map"]) if "source_map" in a else None
        tmap = AffineLatticeMap.from_json(a["target_map"]) if "target_map" in a else None
        return tame.polytope_change(kids[0], src, tgt, smap, tmap)
    if r.op == "compose":
        return compose(kids[0], kids[1])
    raise ValueError(f"unknown recipe op {r.op!r}")


def evaluate_recipe(r: TameRecipe, field=None, check: bool = True, _path=()) -> GradedHom:
    """Evaluate bottom-up; every intermediate map is checked to be a homomorphism.

    Failures are re-raised as RecipeError carrying the path of the failing
    node (child indices joined with the op names).
    """
    field = field or current_field()
    path = _path + (r.op,)
    if r.op not in OPS:
        raise RecipeError(path, ValueError(f"unknown recipe op {r.op!r}"))
    if len(r.children) != _ARITY[r.op]:
        raise RecipeError(path, ValueError(
            f"{r.op} takes {_ARITY[r.op]} children, got {len(r.children)}"))
    kids = [evaluate_recipe(c, field, check, path + (i,)) for i, c in enumerate(r.children)]
    try:
        out = _eval_node(r, kids, field)
        if check and not is_homomorphism(out):
            raise NotAHomomorphism(f"{r.op} produced a map violating the relations of the source")
    except RecipeError:
        raise
    except (PolylinError, ValueError, ArithmeticError, KeyError, TypeError) as e:
        raise RecipeError(path, e) from e
    out.verified = True
    return out
