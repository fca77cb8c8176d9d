"""Arithmetic in the finite fields GF(2^m), 1 <= m <= 16.

Elements are represented as integer bit-patterns: the polynomial
a_0 + a_1*g + ... + a_{m-1}*g^(m-1) in the residue class ring
GF(2)[g]/(modulus) corresponds to the integer a_0 + 2*a_1 + ... .
The modulus for each degree is a fixed irreducible polynomial (the
lexicographically smallest one), shipped as constants so that square
roots, sections and all derived canonical choices are reproducible
across runs.  Irreducibility is re-verified at field construction.

Multiplication is carryless (shift/xor) followed by reduction; inversion
uses the extended Euclidean algorithm on bit-polynomials.  Every field
of characteristic 2 here is perfect: sqrt is the inverse of Frobenius,
computed as c^(2^(m-1)).
"""

from __future__ import annotations

from ..errors import DivisionByZero

# Smallest irreducible polynomial of each degree over GF(2), as bit-patterns.
IRREDUCIBLE = {
    1: 0b10,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0b100011011,
    9: 0b1000000011,
    10: 0b10000001001,
    11: 0b100000000101,
    12: 0b1000000001001,
    13: 0b10000000011011,
    14: 0b100000000100001,
    15: 0b1000000000000011,
    16: 0b10000000000101011,
}


def clmul(a: int, b: int) -> int:
    """Carryless product of two bit-polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def clmod(a: int, f: int) -> int:
    """Remainder of the bit-polynomial a modulo f."""
    df = f.bit_length() - 1
    while a.bit_length() - 1 >= df and a:
        a ^= f << (a.bit_length() - 1 - df)
    return a


def cldivmod(a: int, f: int) -> tuple[int, int]:
    df = f.bit_length() - 1
    q = 0
    while a.bit_length() - 1 >= df and a:
        shift = a.bit_length() - 1 - df
        q |= 1 << shift
        a ^= f << shift
    return q, a


def _prime_divisors(n: int) -> list[int]:
    ps, d = [], 2
    while d * d <= n:
        if n % d == 0:
            ps.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        ps.append(n)
    return ps


def _clgcd(a: int, b: int) -> int:
    while b:
        a, b = b, clmod(a, b)
    return a


def is_irreducible(f: int) -> bool:
    """Rabin irreducibility test for a bit-polynomial over GF(2)."""
    m = f.bit_length() - 1
    if m < 1:
        return False

    def x_pow_2e(e: int) -> int:
        r = clmod(0b10, f)
        for _ in range(e):
            r = clmod(clmul(r, r), f)
        return r

    if x_pow_2e(m) != clmod(0b10, f):
        return False
    for p in _prime_divisors(m):
        if _clgcd(f, x_pow_2e(m // p) ^ clmod(0b10, f)) != 1:
            return False
    return True


class GF2m:
    """The field GF(2^m) with the fixed modulus for its degree.

    Small fields (m <= 8) get an interned element pool and a full
    multiplication table; the filtration algorithms spend most of their
    time here, so element arithmetic must not allocate.
    """

    _cache: dict[int, "GF2m"] = {}

    def __new__(cls, m: int):
        if m in cls._cache:
            return cls._cache[m]
        if m not in IRREDUCIBLE:
            raise ValueError(f"GF(2^m) supported only for 1 <= m <= 16, got m={m}")
        self = super().__new__(cls)
        self.m = m
        self.modulus = IRREDUCIBLE[m]
        assert is_irreducible(self.modulus)
        self.order = 1 << m
        self._table = None
        self._pool = None
        if m <= 8:
            self._table = [[clmod(clmul(a, b), self.modulus)
                            for b in range(self.order)]
                           for a in range(self.order)]
            self._pool = [FF(self, bits) for bits in range(self.order)]
        cls._cache[m] = self
        return self

    def __repr__(self):
        return f"GF(2^{self.m})" if self.m > 1 else "GF(2)"

    # -- payload-level arithmetic on bit-patterns ------------------------

    def mul(self, a: int, b: int) -> int:
        if self._table is not None:
            return self._table[a][b]
        return clmod(clmul(a, b), self.modulus)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of 0 in " + repr(self))
        # extended Euclid on bit-polynomials
        r0, r1 = self.modulus, a
        s0, s1 = 0, 1
        while r1:
            q, r = cldivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 ^ clmul(q, s1)
        return clmod(s0, self.modulus)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def sqrt(self, a: int) -> int:
        """Inverse Frobenius: the unique b with b^2 = a."""
        return self.pow(a, 1 << (self.m - 1))

    def trace(self, a: int) -> int:
        """Absolute trace to GF(2), as 0 or 1."""
        t, x = 0, a
        for _ in range(self.m):
            t ^= x
            x = self.mul(x, x)
        assert t in (0, 1)
        return t

    def artin_schreier_root(self, c: int) -> int | None:
        """Some u with u^2 + u = c, or None if trace(c) = 1.

        Solved as GF(2)-linear algebra on the map u -> u^2 + u in the
        power basis; the preimage bitmask is itself the field element.
        """
        if self.trace(c) == 1:
            return None
        cols = [self.mul(1 << i, 1 << i) ^ (1 << i) for i in range(self.m)]
        basis: list[tuple[int, int, int]] = []  # (leading bit, value, preimage)
        for i, v in enumerate(cols):
            combo = 1 << i
            for lb, bv, bc in basis:
                if v >> lb & 1:
                    v ^= bv
                    combo ^= bc
            if v:
                basis.append((v.bit_length() - 1, v, combo))
                basis.sort(reverse=True)
        v, u = c, 0
        for lb, bv, bc in basis:
            if v >> lb & 1:
                v ^= bv
                u ^= bc
        if v != 0:
            return None
        assert self.mul(u, u) ^ u == c
        return u

    # -- element construction --------------------------------------------

    def elem(self, bits: int) -> "FF":
        if not 0 <= bits < self.order:
            raise ValueError(f"bit-pattern {bits} out of range for {self!r}")
        if self._pool is not None:
            return self._pool[bits]
        return FF(self, bits)

    @property
    def zero(self) -> "FF":
        return self.elem(0)

    @property
    def one(self) -> "FF":
        return self.elem(1)

    def elements(self):
        """Iterate over all field elements (small m only)."""
        for bits in range(self.order):
            yield self.elem(bits)

    def random(self, rng) -> "FF":
        return self.elem(rng.randrange(self.order))

    # -- residue-field protocol -------------------------------------------

    is_perfect = True

    def frobenius_coordinates(self, c: "FF") -> tuple["FF", "FF"]:
        """c = c0^2 + x*c1^2; perfect fields have c1 = 0 and c0 = sqrt(c)."""
        return FF(self, self.sqrt(c.bits)), self.zero

    def canonical_trace_one(self) -> "FF":
        """Smallest bit-pattern with absolute trace 1 (deterministic)."""
        for bits in range(1, self.order):
            if self.trace(bits) == 1:
                return FF(self, bits)
        raise AssertionError("trace form is surjective")

    def format_elem(self, c: "FF") -> str:
        return str(c.bits)


class FF:
    """An element of GF(2^m), wrapping its bit-pattern."""

    __slots__ = ("field", "bits")

    def __init__(self, field: GF2m, bits: int):
        self.field = field
        self.bits = bits

    def __repr__(self):
        return f"{self.bits}:{self.field!r}"

    def __eq__(self, other):
        return (isinstance(other, FF) and other.field is self.field
                and other.bits == self.bits)

    def __hash__(self):
        return hash((self.field.m, self.bits))

    def is_zero(self) -> bool:
        return self.bits == 0

    def __add__(self, other: "FF") -> "FF":
        return self.field.elem(self.bits ^ other.bits)

    __sub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other: "FF") -> "FF":
        f = self.field
        if f._table is not None:
            return f._pool[f._table[self.bits][other.bits]]
        return FF(f, f.mul(self.bits, other.bits))

    def __truediv__(self, other: "FF") -> "FF":
        return self * other.inv()

    def inv(self) -> "FF":
        return self.field.elem(self.field.inv(self.bits))

    def __pow__(self, e: int) -> "FF":
        return self.field.elem(self.field.pow(self.bits, e))

    def sqrt(self) -> "FF":
        return self.field.elem(self.field.sqrt(self.bits))

    def trace(self) -> int:
        return self.field.trace(self.bits)
