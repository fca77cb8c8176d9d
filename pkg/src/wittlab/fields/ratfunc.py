"""The rational function fields GF(2^m)(x), the imperfect residue fields.

Polynomials over GF(2^m) are dense tuples of bit-pattern coefficients,
lowest degree first, with no trailing zero (the zero polynomial is the
empty tuple).  A rational function is a normalized pair num/den: gcd 1
and monic denominator, so representations are canonical and equality is
structural.

These fields satisfy [k : k^2] = 2 with 2-basis {1, x}: every c splits
uniquely as c = c0^2 + x*c1^2 (`frobenius_coordinates`), computed by
even/odd coefficient splitting after clearing the denominator.

A degree cap (default 512 on num/den degrees) converts runaway
intermediate growth into DegreeCapExceeded instead of a silent hang.
"""

from __future__ import annotations

from ..errors import DegreeCapExceeded, DivisionByZero
from .gf2m import GF2m

Poly = tuple[int, ...]  # coefficients are GF(2^m) bit-patterns, low-first

PZERO: Poly = ()
PONE: Poly = (1,)
PX: Poly = (0, 1)


def ptrim(c: list[int]) -> Poly:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def padd(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    c = list(a)
    for i, bi in enumerate(b):
        c[i] ^= bi
    return ptrim(c)


def pmul(K: GF2m, a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return PZERO
    c = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    c[i + j] ^= K.mul(ai, bj)
    return ptrim(c)


def pscale(K: GF2m, s: int, a: Poly) -> Poly:
    return ptrim([K.mul(s, ai) for ai in a])


def pdivmod(K: GF2m, a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise DivisionByZero("polynomial division by zero")
    r = list(a)
    q = [0] * max(0, len(a) - len(b) + 1)
    inv_lead = K.inv(b[-1])
    for i in range(len(r) - len(b), -1, -1):
        c = K.mul(r[i + len(b) - 1], inv_lead)
        if c:
            q[i] = c
            for j, bj in enumerate(b):
                r[i + j] ^= K.mul(c, bj)
    return ptrim(q), ptrim(r)


def pgcd(K: GF2m, a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, pdivmod(K, a, b)[1]
    if a:
        a = pscale(K, K.inv(a[-1]), a)  # monic
    return a


def peval(K: GF2m, a: Poly, at: int) -> int:
    r = 0
    for c in reversed(a):
        r = K.mul(r, at) ^ c
    return r


class RatFuncField:
    """GF(2^m)(x) with canonical num/den representation."""

    _cache: dict[tuple[int, str], "RatFuncField"] = {}

    def __new__(cls, m: int = 1, variable: str = "x", degree_cap: int = 512):
        key = (m, variable)
        if key in cls._cache and cls._cache[key].degree_cap == degree_cap:
            return cls._cache[key]
        self = super().__new__(cls)
        self.base = GF2m(m)
        self.variable = variable
        self.degree_cap = degree_cap
        cls._cache[key] = self
        return self

    def __repr__(self):
        return f"{self.base!r}({self.variable})"

    is_perfect = False

    @property
    def zero(self) -> "RatFunc":
        return RatFunc(self, PZERO, PONE)

    @property
    def one(self) -> "RatFunc":
        return RatFunc(self, PONE, PONE)

    @property
    def x(self) -> "RatFunc":
        return RatFunc(self, PX, PONE)

    def from_poly(self, coeffs) -> "RatFunc":
        return self.make(ptrim(list(coeffs)), PONE)

    def from_base(self, bits: int) -> "RatFunc":
        return self.make((bits,) if bits else PZERO, PONE)

    def make(self, num: Poly, den: Poly) -> "RatFunc":
        K = self.base
        if not den:
            raise DivisionByZero("rational function with zero denominator")
        if not num:
            return RatFunc(self, PZERO, PONE)
        g = pgcd(K, num, den)
        if len(g) > 1:
            num = pdivmod(K, num, g)[0]
            den = pdivmod(K, den, g)[0]
        lead = den[-1]
        if lead != 1:
            il = K.inv(lead)
            num = pscale(K, il, num)
            den = pscale(K, il, den)
        if max(len(num), len(den)) - 1 > self.degree_cap:
            raise DegreeCapExceeded(
                f"degree {max(len(num), len(den)) - 1} exceeds cap {self.degree_cap}")
        return RatFunc(self, num, den)

    def frobenius_coordinates(self, c: "RatFunc") -> tuple["RatFunc", "RatFunc"]:
        """c = c0^2 + x*c1^2 with respect to the 2-basis {1, x}."""
        K = self.base
        pq = pmul(K, c.num, c.den)  # c = (num*den)/den^2
        even = [K.sqrt(v) for v in pq[0::2]]
        odd = [K.sqrt(v) for v in pq[1::2]]
        c0 = self.make(ptrim(even), c.den)
        c1 = self.make(ptrim(odd), c.den)
        return c0, c1

    def random(self, rng, degree: int = 2) -> "RatFunc":
        num = [rng.randrange(self.base.order) for _ in range(degree + 1)]
        return self.from_poly(num)

    def format_elem(self, c: "RatFunc") -> str:
        num = format_poly(self.base, c.num, self.variable)
        if c.den == PONE:
            return num
        den = format_poly(self.base, c.den, self.variable)
        if len(c.num) > 1:
            num = f"({num})"
        if len(c.den) > 1:
            den = f"({den})"
        return f"{num}/{den}"


def format_poly(K: GF2m, p: Poly, var: str) -> str:
    if not p:
        return "0"
    parts = []
    for e in range(len(p) - 1, -1, -1):
        c = p[e]
        if c == 0:
            continue
        if e == 0:
            parts.append(str(c))
        else:
            head = "" if c == 1 else f"{c}*"
            parts.append(f"{head}{var}" + (f"^{e}" if e > 1 else ""))
    return " + ".join(parts)


class RatFunc:
    """An element of GF(2^m)(x), canonically normalized."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: RatFuncField, num: Poly, den: Poly):
        self.field = field
        self.num = num
        self.den = den

    def __repr__(self):
        return self.field.format_elem(self)

    def __eq__(self, other):
        return (isinstance(other, RatFunc) and other.field is self.field
                and other.num == self.num and other.den == self.den)

    def __hash__(self):
        return hash((id(self.field), self.num, self.den))

    def is_zero(self) -> bool:
        return not self.num

    def __add__(self, other: "RatFunc") -> "RatFunc":
        K = self.field.base
        if self.den == PONE and other.den == PONE:
            return RatFunc(self.field, padd(self.num, other.num), PONE)
        num = padd(pmul(K, self.num, other.den), pmul(K, other.num, self.den))
        return self.field.make(num, pmul(K, self.den, other.den))

    __sub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        K = self.field.base
        if self.den == PONE and other.den == PONE:
            num = pmul(K, self.num, other.num)
            if len(num) - 1 > self.field.degree_cap:
                raise DegreeCapExceeded(
                    f"degree {len(num) - 1} exceeds cap {self.field.degree_cap}")
            return RatFunc(self.field, num, PONE)
        return self.field.make(pmul(K, self.num, other.num),
                               pmul(K, self.den, other.den))

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        return self * other.inv()

    def inv(self) -> "RatFunc":
        if not self.num:
            raise DivisionByZero("inverse of 0 in " + repr(self.field))
        return self.field.make(self.den, self.num)

    def __pow__(self, e: int) -> "RatFunc":
        if e < 0:
            return self.inv() ** (-e)
        r, b = self.field.one, self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r
