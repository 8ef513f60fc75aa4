"""Command-line front end: ``polylin <group> <command> [options]``.

Every command prints one JSON document on stdout.  Exit status is 0 on
success, 2 on a domain error and 1 on a usage error; errors are printed as
``{"error": code, "detail": ...}``.

Polytope arguments accept a JSON file (``{"vertices": [...]}``), a name
from ``--registry`` or a catalog name such as ``SQ`` or ``T2``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import catalog
from .arith.fields import parse_field, use_field
from .arith.laurent import LaurentPoly
from .automorphisms import (
    ColumnStructure,
    column_count,
    column_vectors,
    compose_normal_form,
    elementary,
    predicted_gamma_dim,
    symmetries,
    toric,
)
from .errors import PolylinError
from .geometry import AffineLatticeMap, LatticePolytope, dilate, is_normalized, is_pyramid
from .homs import (
    GradedHom,
    compose,
    degree1_rank,
    hom_equations,
    is_homomorphism,
    is_idempotent,
    tangent_dim,
)
from .recipe import TameRecipe, evaluate_recipe
from .semigroup import binomial_relations, default_relation_degree, hilbert, is_generated_in_degree
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
    minkowski_star,
    polytope_change,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class Session:
    """State shared by every computation of one invocation."""

    def __init__(self, field, registry=None, seed=0, relation_degree=None):
        self.field = field
        self.registry = registry or {}
        self.seed = seed
        self.relation_degree = relation_degree

    @classmethod
    def from_args(cls, args):
        try:
            field = parse_field(args.field, args.p)
        except ValueError as e:
            raise UsageError(str(e)) from None
        registry = {}
        if args.registry:
            for entry in _load_json(args.registry):
                name = entry.get("name")
                if not name:
                    raise UsageError("registry entries need a name")
                if name in registry:
                    raise UsageError(f"duplicate registry name {name!r}")
                registry[name] = LatticePolytope.from_json(entry)
        return cls(field, registry, args.seed, args.relation_degree)

    def polytope(self, ref):
        try:
            return self._polytope(ref)
        except (KeyError, TypeError, AttributeError) as e:
            raise UsageError(f"malformed polytope {ref!r}: {e}") from None

    def _polytope(self, ref):
        if isinstance(ref, str) and ref.lstrip().startswith("{"):
            ref = _load_json(ref)
        if isinstance(ref, dict):
            return LatticePolytope.from_json(ref)
        if ref in self.registry:
            return self.registry[ref]
        if os.path.exists(ref):
            data = _load_json(ref)
            if isinstance(data, str):
                return self._polytope(data)
            return LatticePolytope.from_json(data)
        try:
            return catalog.get(ref)
        except KeyError:
            raise UsageError(f"unknown polytope {ref!r}") from None

    def hom(self, path):
        data = _load_json(path)
        if not isinstance(data, dict) or "source" not in data or "target" not in data:
            raise UsageError(f"{path}: a homomorphism needs source, target and matrix or images")
        data = dict(data)
        fname = data.get("field")
        if fname and fname != self.field.name:
            raise UsageError(f"homomorphism is over {fname}, session field is {self.field.name}")
        for key in ("source", "target"):
            if isinstance(data[key], str):
                data[key] = self.polytope(data[key]).to_json()
        try:
            return GradedHom.from_json(data, self.field)
        except (KeyError, TypeError) as e:
            raise UsageError(f"{path}: malformed homomorphism ({e})") from None

    def D(self, P):
        return self.relation_degree or default_relation_degree(P)


def _load_json(path):
    """Read JSON from a file, or parse the argument itself when it is inline JSON."""
    if path.lstrip()[:1] in ("[", "{"):
        try:
            return json.loads(path)
        except json.JSONDecodeError as e:
            raise UsageError(f"malformed inline JSON: {e}") from None
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise UsageError(f"malformed JSON in {path}: {e}") from None


def _ints(text):
    try:
        return tuple(int(t) for t in text.split(",") if t.strip() != "")
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _scalars(text):
    return [t.strip() for t in text.split(",")]


# -- poly ------------------------------------------------------------------------------


def cmd_poly(s, a):
    P = s.polytope(a.input)
    c = a.command
    if c == "info":
        return {"name": P.name or "", "ambient_dim": P.ambient_dim, "dim": P.dim,
                "vertices": [list(v) for v in P.vertices], "n_points": P.n_points,
                "n_facets": len(P.facets), "normalized": is_normalized(P)}
    if c == "points":
        return {"count": P.n_points, "points": [list(x) for x in P.lattice_points]}
    if c == "facets":
        return {"count": len(P.facets), "facets": P.to_json(full=True)["facets"]}
    if c == "columns":
        return {"count": column_count(P), "columns": [k.to_json() for k in column_vectors(P)]}
    if c == "symmetries":
        syms = symmetries(P)
        return {"count": len(syms), "symmetries": [x.to_json() for x in syms]}
    if c == "hilbert":
        degs = range(a.up_to + 1) if a.up_to is not None else [a.degree]
        return {"hilbert": [{"degree": e, "count": hilbert(P, e)} for e in degs]}
    if c == "relations":
        D = a.degree or s.D(P)
        rels = binomial_relations(P, D)
        return {"degree_bound": D, "count": len(rels), "relations": [r.to_json() for r in rels],
                "generated_up_to": D + 1, "generated": is_generated_in_degree(P, D, D + 1)}
    if c == "dilate":
        return dilate(P, a.factor).to_json()
    if c == "pyramid":
        return {"pyramids": [{"apex": list(v), "base": B.to_json()} for v, B in is_pyramid(P)]}
    raise UsageError(f"unknown command poly {c}")


# -- hom --------------------------------------------------------------------------------


def cmd_hom(s, a):
    c = a.command
    if c == "equations":
        P, Q = s.polytope(a.source), s.polytope(a.target)
        eqs = hom_equations(P, Q, s.D(P))
        out = eqs.to_json()
        out["count"] = len(eqs)
        return out
    if c == "tangent-dim":
        P = s.polytope(a.input)
        return {"dim": tangent_dim(P, s.D(P)), "predicted": predicted_gamma_dim(P)}
    if c == "compose":
        g, f = s.hom(a.g), s.hom(a.f)
        return compose(g, f).to_json()
    f = s.hom(a.hom)
    if c == "check":
        return {"homomorphism": is_homomorphism(f, s.D(f.source))}
    if c == "rank":
        r, inj, sur = degree1_rank(f)
        return {"rank": r, "injective": inj, "surjective": sur}
    if c == "idempotent":
        return {"idempotent": is_idempotent(f)}
    raise UsageError(f"unknown command hom {c}")


# -- auto -------------------------------------------------------------------------------


def cmd_auto(s, a):
    P = s.polytope(a.input)
    c = a.command
    if c == "elementary":
        col = ColumnStructure(_ints(a.v), a.facet)
        return elementary(P, col, s.field(a.lam)).to_json()
    if c == "toric":
        return toric(P, _scalars(a.xi)).to_json()
    if c == "normal-form":
        spec = _load_json(a.spec)
        sigma = None
        if spec.get("sigma") is not None:
            syms = symmetries(P)
            k = int(spec["sigma"])
            if not 0 <= k < len(syms):
                raise UsageError(f"symmetry index {k} out of range (0..{len(syms) - 1})")
            sigma = syms[k]
        blocks = []
        for b in spec.get("blocks", []):
            fi = int(b["facet"])
            lams = {ColumnStructure(tuple(e["v"]), fi): e["lambda"] for e in b["lambdas"]}
            blocks.append((fi, lams))
        return compose_normal_form(P, sigma, spec.get("tau"), blocks).to_json()
    raise UsageError(f"unknown command auto {c}")


# -- tame -------------------------------------------------------------------------------


def _fibration(s, P, a):
    if a.fibration:
        return Fibration.from_json(P, _load_json(a.fibration))
    fibs = detect_segmental_fibrations(P)
    if not 0 <= a.index < len(fibs):
        raise UsageError(f"fibration index {a.index} out of range ({len(fibs)} found)")
    return fibs[a.index]


def _affine(path):
    return AffineLatticeMap.from_json(_load_json(path)) if path else None


def cmd_tame(s, a):
    c = a.command
    if c in ("retract", "include"):
        P, F = s.polytope(a.input), s.polytope(a.face)
        fn = face_retraction if c == "retract" else face_inclusion
        return fn(P, F).to_json()
    if c == "fibrations":
        P = s.polytope(a.input)
        fibs = detect_segmental_fibrations(P)
        return {"count": len(fibs), "fibrations": [f.to_json() for f in fibs]}
    if c == "fib-retract":
        P = s.polytope(a.input)
        fib = _fibration(s, P, a)
        rho = fibration_retraction(fib)
        if a.idempotent:
            e = compose(base_inclusion(fib), rho)
            out = e.to_json()
            out["idempotent"] = is_idempotent(e)
            return out
        return rho.to_json()
    if c == "blowup":
        return homothetic_blowup(s.hom(a.hom), a.c).to_json()
    if c == "star":
        return minkowski_star(s.hom(a.f), s.hom(a.g)).to_json()
    if c == "extend":
        f0 = s.hom(a.hom)
        P = s.polytope(a.input)
        q = LaurentPoly.from_json(_load_json(a.q), f0.target.ambient_dim, s.field)
        return free_extension(f0, P, _ints(a.apex), q).to_json()
    if c == "change":
        f = s.hom(a.hom)
        src = s.polytope(a.source) if a.source else None
        tgt = s.polytope(a.target) if a.target else None
        return polytope_change(f, src, tgt, _affine(a.source_map), _affine(a.target_map)).to_json()
    if c == "factor-affine":
        data = _load_json(a.alpha)
        alpha = {tuple(e["x"]): tuple(e["value"]) for e in data}
        return factor_affine(alpha, a.c).to_json()
    if c == "decompose":
        return decompose_veronese(s.hom(a.hom), absorb_scalars=not a.keep_scalars).to_json()
    if c == "recipe":
        r = TameRecipe.from_json(_load_json(a.recipe))
        return evaluate_recipe(r, s.field).to_json()
    raise UsageError(f"unknown command tame {c}")


def cmd_verify(s, a):
    from .verify import CRITERIA, run_criterion

    wanted = _ints(a.only) if a.only else [n for n, _, _ in CRITERIA]
    results = [run_criterion(n, s.seed) for n in wanted]
    return {"passed": all(r.passed for r in results),
            "table": [r.line(a.timings) for r in results],
            "criteria": [r.to_json(a.timings) for r in results]}


# -- parser -----------------------------------------------------------------------------


def build_parser():
    p = _Parser(prog="polylin", description="Exact polytopal linear algebra.")
    p.add_argument("--field", default="Q", help="Q or Fp (default Q)")
    p.add_argument("-p", type=int, default=None, help="prime for --field Fp")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--relation-degree", type=int, default=None,
                   help="degree bound for binomial relations (default: detected)")
    p.add_argument("--registry", default=None, help="JSON list of named polytopes")
    groups = p.add_subparsers(dest="group", required=True, parser_class=_Parser)

    poly = groups.add_parser("poly").add_subparsers(dest="command", required=True)
    for name in ("info", "points", "facets", "columns", "symmetries", "hilbert", "relations",
                 "dilate", "pyramid"):
        sp = poly.add_parser(name)
        sp.add_argument("--in", dest="input", required=True)
        if name == "hilbert":
            sp.add_argument("--degree", type=int, default=1)
            sp.add_argument("--up-to", type=int, default=None)
        if name == "relations":
            sp.add_argument("--degree", type=int, default=None)
        if name == "dilate":
            sp.add_argument("--factor", type=int, required=True)

    hom = groups.add_parser("hom").add_subparsers(dest="command", required=True)
    sp = hom.add_parser("equations")
    sp.add_argument("--source", required=True)
    sp.add_argument("--target", required=True)
    for name in ("check", "rank", "idempotent"):
        hom.add_parser(name).add_argument("--hom", required=True)
    sp = hom.add_parser("compose", help="g o f")
    sp.add_argument("--g", required=True)
    sp.add_argument("--f", required=True)
    hom.add_parser("tangent-dim").add_argument("--in", dest="input", required=True)

    auto = groups.add_parser("auto").add_subparsers(dest="command", required=True)
    sp = auto.add_parser("elementary")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--v", required=True, help="column vector, e.g. 0,-1")
    sp.add_argument("--facet", type=int, required=True, help="base facet index")
    sp.add_argument("--lambda", dest="lam", default="1")
    sp = auto.add_parser("toric")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--xi", required=True, help="comma-separated nonzero scalars")
    sp = auto.add_parser("normal-form")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--spec", required=True)

    tame = groups.add_parser("tame").add_subparsers(dest="command", required=True)
    for name in ("retract", "include"):
        sp = tame.add_parser(name)
        sp.add_argument("--in", dest="input", required=True)
        sp.add_argument("--face", required=True)
    tame.add_parser("fibrations").add_argument("--in", dest="input", required=True)
    sp = tame.add_parser("fib-retract")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--fibration", default=None)
    sp.add_argument("--index", type=int, default=0, help="index into detected fibrations")
    sp.add_argument("--idempotent", action="store_true", help="return base inclusion o retraction")
    sp = tame.add_parser("blowup")
    sp.add_argument("--hom", required=True)
    sp.add_argument("--c", type=int, required=True)
    sp = tame.add_parser("star")
    sp.add_argument("--f", required=True)
    sp.add_argument("--g", required=True)
    sp = tame.add_parser("extend")
    sp.add_argument("--hom", required=True)
    sp.add_argument("--in", dest="input", required=True, help="the pyramid")
    sp.add_argument("--apex", required=True)
    sp.add_argument("--q", required=True, help="JSON terms of the apex image")
    sp = tame.add_parser("change")
    sp.add_argument("--hom", required=True)
    sp.add_argument("--source", default=None)
    sp.add_argument("--target", default=None)
    sp.add_argument("--source-map", default=None)
    sp.add_argument("--target-map", default=None)
    sp = tame.add_parser("factor-affine")
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--c", type=int, required=True)
    sp = tame.add_parser("decompose")
    sp.add_argument("--hom", required=True)
    sp.add_argument("--keep-scalars", action="store_true")
    tame.add_parser("recipe").add_argument("--recipe", required=True)

    sp = groups.add_parser("verify")
    sp.add_argument("--only", default=None, help="comma-separated criterion numbers")
    sp.add_argument("--timings", action="store_true",
                    help="include wall-clock times (output is then not byte-deterministic)")
    return p


HANDLERS = {"poly": cmd_poly, "hom": cmd_hom, "auto": cmd_auto, "tame": cmd_tame,
            "verify": cmd_verify}


def dispatch(argv=None, out=None):
    """Run one command; returns the exit code."""
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        session = Session.from_args(args)
        with use_field(session.field):
            result = HANDLERS[args.group](session, args)
        code = 0
        if args.group == "verify" and not result["passed"]:
            code = 2
    except UsageError as e:
        result, code = {"error": "usage", "detail": str(e)}, 1
    except PolylinError as e:
        result, code = {"error": e.code, "detail": e.detail()}, 2
    except (ValueError, ArithmeticError, KeyError) as e:
        result, code = {"error": "domain_error", "detail": f"{type(e).__name__}: {e}"}, 2
    out.write(json.dumps(result, indent=2) + "\n")
    return code


def main():
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
