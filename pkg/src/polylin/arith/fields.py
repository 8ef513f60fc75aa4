"""Coefficient fields: the rationals and prime fields F_p.

A field object converts Python numbers into its elements and knows how to
parse/format them.  Rational elements are plain ``fractions.Fraction``;
prime-field elements are ``Fp`` instances.  Both support the usual
arithmetic operators, so code above this layer is field-agnostic.

The session field lives in a context variable (default: the rationals)::

    with use_field(GF(5)):
        ...
"""

from __future__ import annotations

import contextvars
from contextlib import contextmanager
from fractions import Fraction
from math import isqrt


class Fp:
    """An element of the prime field F_p."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError(f"mixing F_{self.p} and F_{other.p}")
            return other.v
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise ZeroDivisionError(f"{other} has no image in F_{self.p}")
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return Fp(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.v == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return Fp(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if e < 0:
            if self.v == 0:
                raise ZeroDivisionError("division by zero in F_%d" % self.p)
            return Fp(pow(pow(self.v, -1, self.p), -e, self.p), self.p)
        return Fp(pow(self.v, e, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.v == o

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Fp({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in range(2, isqrt(p) + 1):
        if p % q == 0:
            return False
    return True


def _int_root(n: int, c: int):
    """Exact integer c-th root of n >= 0, or None."""
    if n < 2:
        return n
    r = round(n ** (1.0 / c))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**c == n:
            return cand
    # float estimate can be off for huge n; fall back to bisection
    lo, hi = 0, 1 << (n.bit_length() // c + 1)
    while lo <= hi:
        mid = (lo + hi) // 2
        m = mid**c
        if m == n:
            return mid
        if m < n:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


class RationalField:
    name = "Q"
    characteristic = 0

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, Fp):
            raise TypeError("cannot lift an F_p element to Q")
        if isinstance(x, str):
            return Fraction(x.strip())
        return Fraction(x)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def is_element(self, x) -> bool:
        return isinstance(x, (Fraction, int)) and not isinstance(x, bool)

    def format(self, x) -> str:
        x = self(x)
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    def nth_root(self, a, c: int):
        """A c-th root of ``a`` in Q, or None when there is none."""
        a = self(a)
        if a == 0:
            return Fraction(0)
        sign = 1
        if a < 0:
            if c % 2 == 0:
                return None
            sign = -1
        num = _int_root(abs(a.numerator), c)
        den = _int_root(a.denominator, c)
        if num is None or den is None:
            return None
        return sign * Fraction(num, den)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


class PrimeField:
    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"F{p}"
        self.characteristic = p

    def __call__(self, x):
        if isinstance(x, Fp):
            if x.p != self.p:
                raise ValueError(f"mixing F_{self.p} and F_{x.p}")
            return x
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in F_{self.p}")
            return Fp(x.numerator * pow(x.denominator, -1, self.p), self.p)
        return Fp(int(x), self.p)

    @property
    def zero(self):
        return Fp(0, self.p)

    @property
    def one(self):
        return Fp(1, self.p)

    def is_element(self, x) -> bool:
        return isinstance(x, Fp) and x.p == self.p

    def format(self, x) -> str:
        return str(self(x).v)

    def elements(self):
        return [Fp(i, self.p) for i in range(self.p)]

    def nth_root(self, a, c: int):
        a = self(a)
        for r in range(self.p):
            if pow(r, c, self.p) == a.v:
                return Fp(r, self.p)
        return None

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


_session_field = contextvars.ContextVar("polylin_field", default=QQ)


def current_field():
    return _session_field.get()


@contextmanager
def use_field(field):
    token = _session_field.set(field)
    try:
        yield field
    finally:
        _session_field.reset(token)


def parse_field(name: str, p: int | None = None):
    """Field from CLI-style arguments: ``"Q"`` or ``"Fp"`` with a prime."""
    if name in ("Q", "QQ"):
        return QQ
    if name in ("Fp", "F", "GF"):
        if p is None:
            raise ValueError("field Fp needs a prime -p")
        return GF(p)
    if name.startswith("F") and name[1:].isdigit():
        return GF(int(name[1:]))
    raise ValueError(f"unknown field {name!r}")
