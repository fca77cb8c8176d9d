"""Quadratic and bilinear forms over the valued base fields.

A form of dimension n is stored as upper-triangular coefficient data
q(x) = sum_{i<=j} U[i][j] x_i x_j.  This keeps the characteristic-2
quadratic information that the polar form B = U + U^T cannot see.
The polar form is alternating in characteristic 2 (exact structural
zeros on the diagonal), which downstream singularity certification
relies on.

`symplectic_blocks` implements the ungraded normalisation: split
one-dimensional lines while the polar form has a certified-nonzero
diagonal entry (characteristic 0), then split binary blocks on pivot
pairs of minimal valuation, ties broken lexicographically.

`WittExpr` is a formal orthogonal sum of binary [a,b] summands (plus
diagonal <a> summands in characteristic 0) with the rewrite rules of
the binary-form relation engine; `rewrite` preserves the Witt class,
and remainder terms created at positive depth are kept and tagged with
their guaranteed filtration bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import (PrecisionExhausted, RuleNotApplicable, SingularForm,
                     SingularMatrix)
from .fields.common import INF, lower_bound


class QuadraticForm:
    __slots__ = ("field", "n", "U")

    def __init__(self, field, coeffs):
        """coeffs: n x n upper-triangular rows; entries below the diagonal
        must be (exact) zeros and are normalized away."""
        self.field = field
        self.n = len(coeffs)
        z = field.zero
        self.U = tuple(tuple(coeffs[i][j] if j >= i else z for j in range(self.n))
                       for i in range(self.n))

    def __repr__(self):
        rows = ["[" + ", ".join(self.field.format_elem(c) for c in row) + "]"
                for row in self.U]
        return "QuadraticForm[" + "; ".join(rows) + "]"

    @classmethod
    def binary(cls, field, a, b):
        """[a, b]: a x1^2 + x1 x2 + b x2^2."""
        return cls(field, [[a, field.one], [field.zero, b]])

    @classmethod
    def diagonal(cls, field, entries):
        z = field.zero
        n = len(entries)
        return cls(field, [[entries[i] if i == j else z for j in range(n)]
                           for i in range(n)])

    def evaluate(self, x):
        assert len(x) == self.n
        acc = self.field.zero
        for i in range(self.n):
            if x[i].is_exactly_zero():
                continue
            for j in range(i, self.n):
                if self.U[i][j].is_exactly_zero() or x[j].is_exactly_zero():
                    continue
                acc = acc + self.U[i][j] * x[i] * x[j]
        return acc

    def polar_matrix(self):
        """B = U + U^T; alternating in characteristic 2."""
        n = self.n
        return [[self.U[i][j] + self.U[j][i] for j in range(n)] for i in range(n)]

    def polar(self, x, y):
        B = self.polar_matrix()
        acc = self.field.zero
        for i in range(self.n):
            for j in range(self.n):
                acc = acc + B[i][j] * x[i] * y[j]
        return acc

    def is_nonsingular(self) -> bool:
        if self.n == 0:
            return True
        if self.field.char == 2 and self.n % 2 == 1:
            return False  # alternating odd rank
        return linalg.is_invertible_certified(self.polar_matrix())

    def __neg__(self):
        return QuadraticForm(self.field, [[-c for c in row] for row in self.U])

    def ortho_sum(self, other: "QuadraticForm") -> "QuadraticForm":
        assert other.field == self.field
        z = self.field.zero
        n, m = self.n, other.n
        rows = []
        for i in range(n):
            rows.append(list(self.U[i]) + [z] * m)
        for i in range(m):
            rows.append([z] * n + list(other.U[i]))
        return QuadraticForm(self.field, rows)

    def scale(self, c) -> "QuadraticForm":
        if not c.is_certified_nonzero():
            raise SingularForm("scaling by (certified) zero")
        return QuadraticForm(self.field, [[c * v for v in row] for row in self.U])

    def change_basis(self, M) -> "QuadraticForm":
        """The form x -> q(Mx), M given by columns in the old basis."""
        if not linalg.is_invertible_certified(M):
            raise SingularMatrix("change of basis matrix not certified invertible")
        n = self.n
        G = linalg.mat_mul(linalg.mat_mul(linalg.transpose(M),
                                          [list(r) for r in self.U], self.field.zero),
                           M, self.field.zero)
        rows = [[None] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = G[i][i]
            for j in range(i + 1, n):
                rows[i][j] = G[i][j] + G[j][i]
            for j in range(i):
                rows[i][j] = self.field.zero
        return QuadraticForm(self.field, rows)


@dataclass(frozen=True)
class BinaryForm:
    """[a, b] with q(x1, x2) = a x1^2 + x1 x2 + b x2^2."""

    a: object
    b: object

    def to_form(self, field) -> QuadraticForm:
        return QuadraticForm.binary(field, self.a, self.b)

    def is_nonsingular_certified(self) -> bool:
        four_ab = self.a.field.from_int(4) * self.a * self.b \
            if self.a.field.char == 0 else None
        if four_ab is None:
            return True  # 1 - 4ab = 1 in characteristic 2
        return (self.a.field.one - four_ab).is_certified_nonzero()


def gram_of(B, cols, zero):
    """cols^T B cols with zero-skipping (cols given as coordinate lists)."""
    n = len(B)
    m = len(cols)
    Bc = [[zero] * m for _ in range(n)]
    for i in range(n):
        Bi = B[i]
        for c in range(m):
            acc = zero
            for j in range(n):
                if Bi[j].is_exactly_zero() or cols[c][j].is_exactly_zero():
                    continue
                acc = acc + Bi[j] * cols[c][j]
            Bc[i][c] = acc
    G = [[zero] * m for _ in range(m)]
    for r in range(m):
        for c in range(m):
            acc = zero
            for i in range(n):
                if cols[r][i].is_exactly_zero() or Bc[i][c].is_exactly_zero():
                    continue
                acc = acc + cols[r][i] * Bc[i][c]
            G[r][c] = acc
    return G


def _combine(vec, terms):
    """vec + sum coeff*other, skipping zero coefficients."""
    out = list(vec)
    for coeff, other in terms:
        if coeff.is_exactly_zero():
            continue
        for r in range(len(out)):
            if not other[r].is_exactly_zero():
                out[r] = out[r] + coeff * other[r]
    return out


def symplectic_blocks(q: QuadraticForm):
    """Decompose q into <a> lines and binary [a,b] blocks.

    Returns (blocks, M): blocks are ("line", a) or ("pair", a, b) tuples,
    M the basis-change matrix whose columns list the new basis grouped per
    block; q.change_basis(M) is the block-diagonal form.  The Gram matrix
    of the working basis is maintained incrementally, so the whole
    decomposition costs O(n^3) field operations.
    """
    F = q.field
    n = q.n
    B = q.polar_matrix()
    vecs = [[F.one if i == r else F.zero for i in range(n)] for r in range(n)]
    G = [row[:] for row in B]
    blocks = []
    columns = []
    while vecs:
        m = len(vecs)
        # characteristic 0: split a line on the certified-nonzero diagonal
        # entry of minimal valuation
        pick = None
        for idx in range(m):
            d = G[idx][idx]
            if d.is_certified_nonzero():
                v = d.valuation()
                if pick is None or v < pick[0] or (v == pick[0] and idx < pick[1]):
                    pick = (v, idx)
        if pick is not None:
            idx = pick[1]
            e = vecs[idx]
            de = G[idx][idx]
            blocks.append(("line", q.evaluate(e)))
            columns.append(e)
            keep = [r for r in range(m) if r != idx]
            coef = {r: G[r][idx] / de for r in keep}
            vecs = [_combine(vecs[r], [(-coef[r], e)]) for r in keep]
            G = [[G[r][c] - coef[r] * G[idx][c] - coef[c] * G[r][idx]
                  + coef[r] * coef[c] * de for c in keep] for r in keep]
            continue
        if not all(G[idx][idx].is_exactly_zero() for idx in range(m)):
            raise PrecisionExhausted(
                "diagonal polar entries indistinguishable from zero")
        # alternating part: pivot pair of minimal valuation
        pair = None
        for i in range(m):
            for j in range(i + 1, m):
                g = G[i][j]
                if g.is_certified_nonzero():
                    v = g.valuation()
                    if pair is None or v < pair[0] or (v == pair[0] and (i, j) < pair[1]):
                        pair = (v, (i, j))
        if pair is None:
            if all(G[i][j].is_exactly_zero() for i in range(m)
                   for j in range(i + 1, m)):
                raise SingularForm("form has a (certified) radical")
            raise PrecisionExhausted(
                "pairings indistinguishable from zero while splitting")
        i, j = pair[1]
        g = G[i][j]
        ginv = g.inv()
        e = vecs[i]
        f = [c * ginv for c in vecs[j]]  # b(e, f) = 1
        blocks.append(("pair", q.evaluate(e), q.evaluate(f)))
        columns.extend([e, f])
        keep = [r for r in range(m) if r not in (i, j)]
        # with b(e,e) = b(f,f) = 0 and b(e,f) = 1: w' = w - b(w,f)e - b(w,e)f
        lam = {r: G[r][j] * ginv for r in keep}
        mu = {r: G[r][i] for r in keep}
        vecs = [_combine(vecs[r], [(-lam[r], e), (-mu[r], f)]) for r in keep]
        G = [[G[r][c] - lam[c] * G[r][i] - mu[c] * (G[r][j] * ginv)
              for c in keep] for r in keep]
        if F.char == 2:
            # the complement Gram stays alternating; restore the structural
            # zeros that limited-precision cancellation cannot certify
            for r in range(len(G)):
                G[r][r] = F.zero
    M = [[columns[c][r] for c in range(n)] for r in range(n)]
    return blocks, M


# -- Witt expressions and the relation engine --------------------------------


@dataclass(frozen=True)
class Summand:
    kind: str  # "bin" or "diag"
    a: object
    b: object = None
    depth_bound: Fraction = None  # guaranteed filtration bound, if tagged

    def pretty(self, field):
        if self.kind == "bin":
            return f"[{field.format_elem(self.a)}, {field.format_elem(self.b)}]"
        return f"<{field.format_elem(self.a)}>"


class WittExpr:
    """A formal orthogonal sum representing a Witt class."""

    def __init__(self, field, summands=()):
        self.field = field
        self.summands = tuple(summands)

    def __repr__(self):
        if not self.summands:
            return "0_W"
        return " + ".join(s.pretty(self.field) for s in self.summands) + "_W"

    @classmethod
    def binary(cls, field, a, b):
        return cls(field, [Summand("bin", a, b)])

    @classmethod
    def diagonal(cls, field, entries):
        if field.char == 2:
            raise RuleNotApplicable("diagonal summands need characteristic 0")
        return cls(field, [Summand("diag", e) for e in entries])

    def __add__(self, other: "WittExpr") -> "WittExpr":
        assert other.field == self.field
        return WittExpr(self.field, self.summands + other.summands)

    def to_form(self) -> QuadraticForm:
        form = QuadraticForm(self.field, [])
        for s in self.summands:
            if s.kind == "bin":
                form = form.ortho_sum(QuadraticForm.binary(self.field, s.a, s.b))
            else:
                form = form.ortho_sum(QuadraticForm.diagonal(self.field, [s.a]))
        return form

    def replaced(self, at, new_summands) -> "WittExpr":
        at = sorted(at, reverse=True)
        items = list(self.summands)
        for i in at:
            items.pop(i)
        return WittExpr(self.field, items + list(new_summands))


def _vsum_positive(a, b) -> bool:
    la, lb = a.low_bound(), b.low_bound()
    if la == INF or lb == INF:
        return True
    return la + lb > 0


def _need(cond, message):
    if not cond:
        raise RuleNotApplicable(message)


def rewrite(expr: WittExpr, rule: str, at, c=None) -> WittExpr:
    """Apply one relation of the binary-form engine at the given indices.

    Rules: "a" swap; "b" transfer of a square factor c^2 (needs c);
    "c" uniformizer shuffle; "d" the two-summand isometry; "d_merge"
    first-slot merge of summands sharing their second entry; "e"
    deletion when v(ab) > 0; "f" diagonal pair to binary; "g" diagonal
    pair rewrite (characteristic 0 only for f, g).
    """
    F = expr.field
    idxs = [at] if isinstance(at, int) else list(at)
    terms = [expr.summands[i] for i in idxs]

    if rule == "a":
        (s,) = terms
        _need(s.kind == "bin", "rule (a) applies to binary summands")
        return expr.replaced(idxs, [Summand("bin", s.b, s.a)])

    if rule == "b":
        (s,) = terms
        _need(s.kind == "bin", "rule (b) applies to binary summands")
        _need(c is not None and c.is_certified_nonzero(), "rule (b) needs c != 0")
        c2 = c * c
        return expr.replaced(idxs, [Summand("bin", s.a / c2, s.b * c2)])

    if rule == "c":
        (s,) = terms
        _need(s.kind == "bin", "rule (c) applies to binary summands")
        pi = F.uniformizer()
        alpha = pi * s.a
        _need(lower_bound(alpha.valuation()) >= 0,
              "rule (c) needs v(a) >= -1 so that pi*a is integral")
        vb = s.b.low_bound()
        k = 0
        if vb != INF and vb < 0:
            k = (-int(vb) + 1) // 2
        beta = s.b
        for _ in range(2 * k):
            beta = beta * pi
        pi_pow = F.one
        for _ in range(2 * k + 1):
            pi_pow = pi_pow * pi
        return expr.replaced(idxs, [Summand("bin", beta, alpha / pi_pow)])

    if rule == "d":
        # [a,b] perp [c,d] is isometric to [a+c, b] perp
        # [-c/(1-4cd), d - b/(1-4ab)] via e1' = e1+e2, f1' = f1,
        # e2' = (e2-2cf2)/(1-4cd), f2' = (2be1-f1+(1-4ab)f2)/(1-4ab);
        # the second entry is d - b/(1-4ab), not (d-b)/(1-4ab): only the
        # former reproduces the Gram of that basis change.
        s1, s2 = terms
        _need(s1.kind == "bin" and s2.kind == "bin",
              "rule (d) applies to binary summands")
        a, b = s1.a, s1.b
        cc, d = s2.a, s2.b
        one = F.one
        if F.char == 2:
            den1 = den2 = one
        else:
            four = F.from_int(4)
            den2 = one - four * cc * d
            den1 = one - four * a * b
            _need(den1.is_certified_nonzero() and den2.is_certified_nonzero(),
                  "rule (d) needs both summands nonsingular")
        first = Summand("bin", a + cc, b)
        second = Summand("bin", (-cc) / den2, d - b / den1)
        return expr.replaced(idxs, [first, second])

    if rule == "d_merge":
        s1, s2 = terms
        _need(s1.kind == "bin" and s2.kind == "bin",
              "rule (d) applies to binary summands")
        _need((s1.b - s2.b).is_exactly_zero(),
              "merge needs summands with equal second entries")
        a, b_, g = s1.a, s2.a, s1.b
        one = F.one
        merged = Summand("bin", a + b_, g)
        if F.char == 2:
            return expr.replaced(idxs, [merged])
        four = F.from_int(4)
        den2 = one - four * b_ * g
        den1 = one - four * a * g
        _need(den1.is_certified_nonzero() and den2.is_certified_nonzero(),
              "merge needs both summands nonsingular")
        ra = (-b_) / den2
        rb = g - g / den1
        bound = Fraction(0)
        la, lb = ra.low_bound(), rb.low_bound()
        if la != INF and lb != INF:
            bound = max(Fraction(0), -Fraction(la + lb) / 2)
        return expr.replaced(idxs, [merged, Summand("bin", ra, rb, bound)])

    if rule == "e":
        (s,) = terms
        _need(s.kind == "bin", "rule (e) applies to binary summands")
        _need(_vsum_positive(s.a, s.b), "rule (e) needs certified v(ab) > 0")
        return expr.replaced(idxs, [])

    if rule == "f":
        s1, s2 = terms
        _need(F.char == 0, "rule (f) needs characteristic 0")
        _need(s1.kind == "diag" and s2.kind == "diag",
              "rule (f) applies to a diagonal pair")
        a, b = s1.a, s2.a
        _need(a.is_certified_nonzero(), "rule (f) needs a != 0")
        four_a2 = F.from_int(4) * a * a
        return expr.replaced(idxs, [Summand("bin", a, (a + b) / four_a2)])

    if rule == "g":
        s1, s2 = terms
        _need(F.char == 0, "rule (g) needs characteristic 0")
        _need(s1.kind == "diag" and s2.kind == "diag",
              "rule (g) applies to a diagonal pair")
        a, b = s1.a, s2.a
        s = a + b
        _need(a.is_certified_nonzero() and b.is_certified_nonzero()
              and s.is_certified_nonzero(), "rule (g) needs a, b, a+b != 0")
        return expr.replaced(idxs, [Summand("diag", s), Summand("diag", a * b * s)])

    raise RuleNotApplicable(f"unknown rule {rule!r}")
