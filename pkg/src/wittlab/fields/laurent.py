"""Formal Laurent series k((t)) over a characteristic-2 residue field.

An element is stored as (v0, coeffs, abs_prec): the series
coeffs[0]*t^v0 + coeffs[1]*t^(v0+1) + ..., known modulo t^abs_prec.
`abs_prec is None` means the element is exact, i.e. it *is* the stored
Laurent polynomial; sums and products of exact elements stay exact, so
structural zeros (needed to certify singularity) are never lost.
Inversion of a non-monomial drops to the field's working precision.

Normalization: coeffs is empty (the zero-to-precision element, or the
exact zero) or starts and ends with nonzero residue coefficients.
Arithmetic never reports more precision than the min/add rules justify.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import DivisionByZero, NegativeValuation, PrecisionExhausted
from .common import INF, AtLeast
from .gf2m import GF2m
from .ratfunc import RatFuncField


class LaurentField:
    """k((t)) with v(t) = 1 and a default working precision in slots."""

    def __init__(self, residue, precision: int = 64, variable: str = "t"):
        self.residue_field = residue
        self.precision = precision
        self.variable = variable

    def __repr__(self):
        return f"{self.residue_field!r}(({self.variable}))"

    def __eq__(self, other):
        return (isinstance(other, LaurentField)
                and other.residue_field is self.residue_field
                and other.precision == self.precision)

    def __hash__(self):
        return hash((id(self.residue_field), self.precision))

    char = 2
    v2 = INF  # v(2) = infinity in characteristic 2

    def at_precision(self, precision: int) -> "LaurentField":
        return LaurentField(self.residue_field, precision, self.variable)

    # -- construction ------------------------------------------------------

    def make(self, pairs, abs_prec=None) -> "Laurent":
        """Element from (exponent, residue coefficient) pairs."""
        by_exp = {}
        for e, c in pairs:
            if e in by_exp:
                by_exp[e] = by_exp[e] + c
            else:
                by_exp[e] = c
        exps = sorted(e for e, c in by_exp.items()
                      if not c.is_zero() and (abs_prec is None or e < abs_prec))
        if not exps:
            return Laurent(self, 0, (), abs_prec)
        v0, top = exps[0], exps[-1]
        z = self.residue_field.zero
        coeffs = tuple(by_exp.get(e, z) for e in range(v0, top + 1))
        return Laurent(self, v0, coeffs, abs_prec)

    @property
    def zero(self) -> "Laurent":
        return Laurent(self, 0, (), None)

    @property
    def one(self) -> "Laurent":
        return self.make([(0, self.residue_field.one)])

    def uniformizer(self) -> "Laurent":
        return self.make([(1, self.residue_field.one)])

    def section(self, c) -> "Laurent":
        """The constant-coefficient lift; exact, s(0) = 0."""
        return self.make([(0, c)])

    def lift_homog(self, c, degree) -> "Laurent":
        """s(c) * t^degree for an integer degree."""
        d = Fraction(degree)
        if d.denominator != 1:
            if c.is_zero():
                return self.zero
            raise ValueError(f"no element of fractional valuation {d}")
        return self.make([(int(d), c)])

    def zero_to_precision(self, bound: int) -> "Laurent":
        return Laurent(self, 0, (), bound)

    # -- Hensel ------------------------------------------------------------

    def artin_schreier_lift(self, c: "Laurent") -> "Laurent":
        """The root of u^2 + u + c = 0 with v(u) > 0: u = sum c^(2^i)."""
        from ..errors import NotApplicable
        v = c.valuation()
        if not (isinstance(v, AtLeast) and v.bound > 0 or v == INF
                or (isinstance(v, int) and v > 0)):
            raise NotApplicable(f"hensel_artin_schreier needs v(c) > 0, got v = {v}")
        bound = c.abs_prec
        if bound is None:
            bound = (v if isinstance(v, int) else 1) + self.precision
        u = self.zero
        term = c
        while True:
            tv = term.valuation()
            if tv == INF or (isinstance(tv, AtLeast) and tv.bound >= bound) \
                    or (isinstance(tv, int) and tv >= bound):
                break
            u = u + term
            term = term * term
        return u.truncated(bound)

    def format_elem(self, x: "Laurent") -> str:
        k = self.residue_field
        parts = []
        for i, c in enumerate(x.coeffs):
            if c.is_zero():
                continue
            e = x.v0 + i
            cs = k.format_elem(c)
            if e == 0:
                parts.append(f"({cs})" if ("+" in cs or "/" in cs) else cs)
                continue
            t = self.variable + (f"^{e}" if e != 1 else "")
            if cs == "1":
                parts.append(t)
            elif "+" in cs or "/" in cs or "*" in cs:
                parts.append(f"({cs})*{t}")
            else:
                parts.append(f"{cs}*{t}")
        body = " + ".join(parts) if parts else "0"
        if x.abs_prec is not None:
            tail = f"O({self.variable}^{x.abs_prec})"
            body = tail if not parts else f"{body} + {tail}"
        return body


class Laurent:
    __slots__ = ("field", "v0", "coeffs", "abs_prec")

    def __init__(self, field: LaurentField, v0: int, coeffs: tuple, abs_prec):
        self.field = field
        self.v0 = v0 if coeffs else 0
        self.coeffs = coeffs
        self.abs_prec = abs_prec
        if coeffs:
            assert not coeffs[0].is_zero() and not coeffs[-1].is_zero()
            assert abs_prec is None or v0 + len(coeffs) <= abs_prec

    def __repr__(self):
        return self.field.format_elem(self)

    def __eq__(self, other):
        return (isinstance(other, Laurent) and other.field == self.field
                and other.v0 == self.v0 and other.coeffs == self.coeffs
                and other.abs_prec == self.abs_prec)

    def __hash__(self):
        return hash((self.v0, self.coeffs, self.abs_prec))

    # -- queries -------------------------------------------------------------

    def is_exactly_zero(self) -> bool:
        return not self.coeffs and self.abs_prec is None

    def is_certified_nonzero(self) -> bool:
        return bool(self.coeffs)

    def is_zero_to_precision(self) -> bool:
        return not self.coeffs

    def valuation(self):
        if self.coeffs:
            return self.v0
        return INF if self.abs_prec is None else AtLeast(self.abs_prec)

    def low_bound(self) -> "int | float":
        """Certified lower bound for the valuation."""
        if self.coeffs:
            return self.v0
        return INF if self.abs_prec is None else self.abs_prec

    def residue(self):
        k = self.field.residue_field
        v = self.valuation()
        if isinstance(v, int) and v < 0:
            raise NegativeValuation(f"residue of element with v = {v}")
        if not self.coeffs or self.v0 > 0:
            return k.zero
        return self.coeffs[-self.v0] if -self.v0 < len(self.coeffs) else k.zero

    def coeff_at(self, degree):
        """Residue coefficient of t^degree, requiring certified v(x) >= degree.

        Fractional degrees have no slot: the answer is zero provided the
        certification holds.  Raises PrecisionExhausted when the element is
        zero to a precision below `degree`, ValueError when v(x) < degree.
        """
        d = Fraction(degree)
        k = self.field.residue_field
        if not self.coeffs:
            if self.abs_prec is None or self.abs_prec >= d:
                return k.zero
            raise PrecisionExhausted(
                f"cannot certify v >= {d}; known only v >= {self.abs_prec}")
        if self.v0 < d:
            raise ValueError(f"coeff_at({d}) on element of valuation {self.v0}")
        if d.denominator != 1 or self.v0 > d:
            return k.zero
        return self.coeffs[0]

    def truncated(self, abs_prec: int) -> "Laurent":
        if self.abs_prec is not None:
            abs_prec = min(abs_prec, self.abs_prec)
        return self.field.make(
            ((self.v0 + i, c) for i, c in enumerate(self.coeffs)), abs_prec)

    # -- arithmetic ------------------------------------------------------------

    def _join_prec(self, other):
        if self.abs_prec is None:
            return other.abs_prec
        if other.abs_prec is None:
            return self.abs_prec
        return min(self.abs_prec, other.abs_prec)

    def __add__(self, other: "Laurent") -> "Laurent":
        assert other.field == self.field
        pairs = [(self.v0 + i, c) for i, c in enumerate(self.coeffs)]
        pairs += [(other.v0 + i, c) for i, c in enumerate(other.coeffs)]
        return self.field.make(pairs, self._join_prec(other))

    __sub__ = __add__  # characteristic 2

    def __neg__(self):
        return self

    def __mul__(self, other: "Laurent") -> "Laurent":
        assert other.field == self.field
        # abs precision of the product: min over the O() cross terms
        prec = None
        if self.abs_prec is not None:
            lb = other.low_bound()
            prec = None if lb == INF else self.abs_prec + lb
        if other.abs_prec is not None:
            lb = self.low_bound()
            p2 = None if lb == INF else other.abs_prec + lb
            prec = p2 if prec is None else (prec if p2 is None else min(prec, p2))
        if not self.coeffs or not other.coeffs:
            return Laurent(self.field, 0, (), prec)
        pairs = {}
        z = self.field.residue_field.zero
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if b.is_zero():
                    continue
                e = self.v0 + other.v0 + i + j
                if prec is not None and e >= prec:
                    continue
                pairs[e] = pairs.get(e, z) + a * b
        return self.field.make(pairs.items(), prec)

    def inv(self) -> "Laurent":
        if not self.coeffs:
            raise DivisionByZero("inverse of (certified) zero Laurent series")
        lead = self.coeffs[0].inv()
        if len(self.coeffs) == 1 and self.abs_prec is None:
            return self.field.make([(-self.v0, lead)])
        # relative precision carried by x, capped at the working precision
        rel = self.field.precision
        if self.abs_prec is not None:
            rel = min(rel, self.abs_prec - self.v0)
        if rel <= 0:
            raise PrecisionExhausted("inverse would carry no certified digits")
        # x = c t^v (1 + u): invert the unit part by a geometric series
        u = self.field.make(
            ((i, lead * c) for i, c in enumerate(self.coeffs) if i > 0), rel)
        geo = self.field.one.truncated(rel)
        term = self.field.one.truncated(rel)
        while True:
            term = (term * u).truncated(rel)
            if not term.coeffs:
                break
            geo = geo + term
        return self.field.make(
            ((geo.v0 + i - self.v0, lead * c) for i, c in enumerate(geo.coeffs)),
            rel - self.v0)

    def __truediv__(self, other: "Laurent") -> "Laurent":
        return self * other.inv()

    def __pow__(self, e: int):
        base = self
        if e < 0:
            base = base.inv()
            e = -e
        out = self.field.one
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out
