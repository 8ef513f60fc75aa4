"""Sparse multivariate Laurent polynomials over an exact field.

Terms are stored as ``{exponent tuple: nonzero coefficient}``.  The canonical
term order is graded lexicographic (total degree, then lex), leading term
first; it drives monic normalization, division and serialization.

Exact division, c-th roots and gcds reduce to ordinary polynomials by
splitting off the monomial part: every nonzero Laurent polynomial is
``t^a * p`` with ``p`` a polynomial not divisible by any variable.  The
polynomial ring is a UFD and a variable is prime, so quotients, roots and
gcds of such normalized parts are again polynomials.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from ..errors import DimensionMismatch, NoExactRoot, NotDivisible
from .fields import current_field


def grlex_key(e):
    return (sum(e), e)


def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub_exp(a, b):
    return tuple(x - y for x, y in zip(a, b))


class LaurentPoly:
    __slots__ = ("terms", "dim", "field", "_hash")

    def __init__(self, terms: Mapping | Iterable = (), dim: int | None = None, field=None):
        field = field or current_field()
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean = {}
        for e, c in items:
            e = tuple(int(x) for x in e)
            c = field(c)
            if e in clean:
                c = clean[e] + c
            if c == 0:
                clean.pop(e, None)
            else:
                clean[e] = c
        if dim is None:
            if not clean:
                raise ValueError("dimension needed for the zero polynomial")
            dim = len(next(iter(clean)))
        for e in clean:
            if len(e) != dim:
                raise DimensionMismatch(f"exponent {e} does not have length {dim}")
        self.terms = clean
        self.dim = dim
        self.field = field
        self._hash = None

    # construction helpers ---------------------------------------------
    @classmethod
    def _raw(cls, terms: dict, dim: int, field):
        # trusted constructor: terms already clean
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.dim = dim
        obj.field = field
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, dim, field=None):
        return cls({}, dim, field)

    @classmethod
    def constant(cls, c, dim, field=None):
        return cls({(0,) * dim: c}, dim, field)

    @classmethod
    def monomial(cls, exp, c=1, field=None):
        exp = tuple(exp)
        return cls({exp: c}, len(exp), field)

    @classmethod
    def variable(cls, i, dim, field=None):
        e = [0] * dim
        e[i] = 1
        return cls({tuple(e): 1}, dim, field)

    # basic protocol -----------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self):
        """Terms in canonical (descending graded-lex) order."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def support(self):
        return sorted(self.terms, key=grlex_key, reverse=True)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.dim == other.dim and self.terms == other.terms
        if isinstance(other, int) or hasattr(other, "denominator"):
            return self == LaurentPoly.constant(other, self.dim, self.field)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim, tuple(self.sorted_terms())))
        return self._hash

    def _check(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other, self.dim, self.field)
        if other.dim != self.dim:
            raise DimensionMismatch(f"ambient dimensions {self.dim} and {other.dim} differ")
        if other.field != self.field:
            raise ValueError(f"fields {self.field!r} and {other.field!r} differ")
        return other

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return LaurentPoly._raw(out, self.dim, self.field)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self.terms.items()}, self.dim, self.field)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exp(e1, e2)
                out[e] = out.get(e, 0) + c1 * c2
        out = {e: c for e, c in out.items() if c != 0}
        return LaurentPoly._raw(out, self.dim, self.field)

    __rmul__ = __mul__

    def scale(self, c):
        c = self.field(c)
        if c == 0:
            return LaurentPoly.zero(self.dim, self.field)
        return LaurentPoly._raw({e: v * c for e, v in self.terms.items()}, self.dim, self.field)

    def shift(self, exp):
        """Multiply by the monomial t^exp."""
        return LaurentPoly._raw(
            {_add_exp(e, exp): c for e, c in self.terms.items()}, self.dim, self.field
        )

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1:
                raise NotDivisible("only monomials are units")
            (e, c), = self.terms.items()
            return LaurentPoly._raw({tuple(-x * -n for x in e): c ** n}, self.dim, self.field)
        result = LaurentPoly.constant(1, self.dim, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # order-related ------------------------------------------------------
    def leading_term(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def leading_coefficient(self):
        return self.leading_term()[1]

    def is_monic(self):
        return bool(self.terms) and self.leading_coefficient() == 1

    def monic(self):
        return self.scale(1 / self.leading_coefficient())

    def min_exponent(self):
        """Componentwise minimum of the exponents (the monomial part)."""
        if not self.terms:
            raise ValueError("zero polynomial")
        return tuple(min(e[i] for e in self.terms) for i in range(self.dim))

    def split_monomial(self):
        """Return ``(a, p)`` with ``self = t^a * p`` and p not divisible by any variable."""
        a = self.min_exponent()
        return a, self.shift(tuple(-x for x in a))

    def is_polynomial(self):
        return all(x >= 0 for e in self.terms for x in e)

    def total_degree(self):
        return max(sum(e) for e in self.terms)

    # evaluation / display ----------------------------------------------
    def evaluate(self, point):
        acc = self.field.zero
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                term = term * (self.field(x) ** k)
            acc = acc + term
        return acc

    def to_str(self, names=None):
        names = names or default_names(self.dim)
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = []
            for nm, k in zip(names, e):
                if k == 1:
                    mono.append(nm)
                elif k != 0:
                    mono.append(f"{nm}^{k}")
            cs = self.field.format(c)
            neg = cs.startswith("-")
            mag = cs[1:] if neg else cs
            if mono:
                body = "*".join(mono)
                body = body if mag == "1" else f"{mag}*{body}"
            else:
                body = mag
            parts.append(("- " if neg else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"LaurentPoly({self.to_str()!r}, dim={self.dim})"

    def to_json(self):
        return [
            {"exponents": list(e), "coeff": self.field.format(c)} for e, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, data, dim=None, field=None):
        return cls([(t["exponents"], t["coeff"]) for t in data], dim, field)


def default_names(dim):
    if dim == 1:
        return ["Y"]
    if dim == 2:
        return ["X", "Y"]
    return [f"X{i + 1}" for i in range(dim - 1)] + ["Y"]


# ---------------------------------------------------------------------------
# polynomial-level helpers on raw term dicts


def _poly_divmod_exact(f: dict, g: dict, dim: int):
    """Divide polynomial f by polynomial g (grlex); return quotient or None."""
    lg = max(g, key=grlex_key)
    lc = g[lg]
    r = dict(f)
    q = {}
    while r:
        lr = max(r, key=grlex_key)
        d = _sub_exp(lr, lg)
        if any(x < 0 for x in d):
            return None
        c = r[lr] / lc
        q[d] = q.get(d, 0) + c
        for e, gc in g.items():
            ee = _add_exp(e, d)
            v = r.get(ee, 0) - c * gc
            if v == 0:
                r.pop(ee, None)
            else:
                r[ee] = v
    return {e: c for e, c in q.items() if c != 0}


def laurent_mul(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    return f * g


def laurent_exact_div(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """The Laurent polynomial q with q*g == f; NotDivisible if none exists."""
    g = f._check(g)
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero():
        return LaurentPoly.zero(f.dim, f.field)
    a, fp = f.split_monomial()
    b, gp = g.split_monomial()
    q = _poly_divmod_exact(fp.terms, gp.terms, f.dim)
    if q is None:
        raise NotDivisible(f"({f}) is not divisible by ({g})")
    out = LaurentPoly._raw(q, f.dim, f.field).shift(_sub_exp(a, b))
    return out


def laurent_nth_root(f: LaurentPoly, c: int) -> LaurentPoly:
    """The monic eta with eta**c == f; NoExactRoot if f is not a c-th power.

    f must be monic (grlex leading coefficient 1).
    """
    if c < 1:
        raise ValueError("root order must be positive")
    if f.is_zero():
        raise ValueError("zero polynomial")
    if not f.is_monic():
        raise ValueError("laurent_nth_root expects a monic polynomial")
    if c == 1:
        return f
    a, p = f.split_monomial()
    if any(x % c for x in a):
        raise NoExactRoot(f"monomial part of {f} is not a {c}-th power")
    if f.field.characteristic and c % f.field.characteristic == 0:
        raise NoExactRoot(f"root order {c} divisible by the characteristic")
    lead, _ = p.leading_term()
    if any(x % c for x in lead):
        raise NoExactRoot(f"leading term of {f} is not a {c}-th power")
    dim, field = f.dim, f.field
    eta = {tuple(x // c for x in lead): field.one}
    eta_lead = tuple(x // c for x in lead)
    # denominator of the Newton step: c * LT(eta)^(c-1)
    denom_exp = tuple(x * (c - 1) for x in eta_lead)
    cur = LaurentPoly._raw(dict(eta), dim, field)
    r = p - cur ** c
    while not r.is_zero():
        lr, lc = r.leading_term()
        e = _sub_exp(lr, denom_exp)
        if any(x < 0 for x in e) or grlex_key(e) >= grlex_key(eta_lead):
            raise NoExactRoot(f"{f} is not a perfect {c}-th power")
        cur = cur + LaurentPoly._raw({e: lc / c}, dim, field)
        r = p - cur ** c
    return cur.shift(tuple(x // c for x in a))


# -- gcd via primitive polynomial remainder sequences -----------------------


def _deg_in(f: dict, k: int) -> int:
    return max(e[k] for e in f)


def _coeffs_in(f: dict, k: int) -> dict:
    """Coefficients of f as a polynomial in variable k (other variables kept)."""
    out = {}
    for e, c in f.items():
        d = e[k]
        ee = e[:k] + (0,) + e[k + 1 :]
        out.setdefault(d, {})[ee] = c
    return out


def _mul(f: dict, g: dict) -> dict:
    out = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = _add_exp(e1, e2)
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c != 0}


def _sub(f: dict, g: dict) -> dict:
    out = dict(f)
    for e, c in g.items():
        v = out.get(e, 0) - c
        if v == 0:
            out.pop(e, None)
        else:
            out[e] = v
    return out


def _monic(f: dict) -> dict:
    lc = f[max(f, key=grlex_key)]
    return {e: c / lc for e, c in f.items()}


def _content(f: dict, k: int, dim: int, one) -> dict:
    g = {}
    for coeff in _coeffs_in(f, k).values():
        g = _gcd(g, coeff, dim, one)
        if len(g) == 1 and all(x == 0 for x in next(iter(g))):
            break
    return g


def _prem(a: dict, b: dict, k: int) -> dict:
    db = _deg_in(b, k)
    lb = _coeffs_in(b, k)[db]
    r = a
    while r and _deg_in(r, k) >= db:
        dr = _deg_in(r, k)
        lr = _coeffs_in(r, k)[dr]
        shift = tuple(dr - db if i == k else 0 for i in range(len(next(iter(b)))))
        xb = {_add_exp(e, shift): c for e, c in b.items()}
        r = _sub(_mul(lb, r), _mul(lr, xb))
    return r


def _gcd(f: dict, g: dict, dim: int, one) -> dict:
    if not f:
        return _monic(g) if g else {}
    if not g:
        return _monic(f)
    zero = (0,) * dim
    k = next((i for i in range(dim) if any(e[i] for e in f) or any(e[i] for e in g)), None)
    if k is None:
        return {zero: one}
    cf = _content(f, k, dim, one)
    cg = _content(g, k, dim, one)
    c = _gcd(cf, cg, dim, one)
    pf = _poly_divmod_exact(f, cf, dim)
    pg = _poly_divmod_exact(g, cg, dim)
    a, b = (pf, pg) if _deg_in(pf, k) >= _deg_in(pg, k) else (pg, pf)
    while b and _deg_in(b, k) > 0:
        r = _prem(a, b, k)
        if r:
            r = _poly_divmod_exact(r, _content(r, k, dim, one), dim)
        a, b = b, r
    if b:
        # nonzero remainder free of x_k: primitive parts are coprime in x_k
        prim = {zero: one}
    else:
        prim = _poly_divmod_exact(a, _content(a, k, dim, one), dim)
    return _monic(_mul(c, prim))


def laurent_gcd(polys: Iterable[LaurentPoly]) -> LaurentPoly:
    """Monic gcd of the normalized (monomial-free) parts of the inputs.

    Laurent gcds are defined up to units (scalars times monomials); this
    returns the representative that is a monic polynomial not divisible by
    any variable.  Zero inputs are ignored.
    """
    polys = [p for p in polys]
    if not polys:
        raise ValueError("gcd of an empty family")
    dim, field = polys[0].dim, polys[0].field
    g = {}
    for p in polys:
        if p.is_zero():
            continue
        _, q = p.split_monomial()
        g = _gcd(g, q.terms, dim, field.one)
        if len(g) == 1 and all(x == 0 for x in next(iter(g))):
            break
    if not g:
        return LaurentPoly.zero(dim, field)
    return LaurentPoly._raw(g, dim, field)
