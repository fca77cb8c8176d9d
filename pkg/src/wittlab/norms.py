"""v-norms compatible with quadratic forms and the wildness-index loop.

A v-norm is stored through a splitting basis (columns of an invertible
matrix over the base field) and rational values; alpha(sum l_i e_i) =
min(v(l_i) + gamma_i).  A depth certificate witnesses the three
compatibility conditions at depth eps: (a) and (b) are valuation bounds
on the splitting basis, (c) is invertibility over the residue field of
the matrix of leading coefficients, which is exactly nondegeneracy of
the induced graded form.

Depth reduction follows the constructive proof of the metabolicity
criterion: decompose the induced space into metabolic planes, lift the
witness basis through the section, measure the slack eps' > 0, raise
the values of the isotropic half by eps'.  The wildness loop repeats
until the induced space carries a nonzero residue invariant, which is
returned as the irreducibility evidence.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import graded, linalg
from .errors import (GridViolation, NotApplicable, PrecisionExhausted,
                     SingularForm, WittlabError)
from .fields.common import INF, AtLeast
from .graded import ShiftedQuadSpace, UniformizingChoice
from .quadform import QuadraticForm, _combine, gram_of, symplectic_blocks

HALF = Fraction(1, 2)


class VNorm:
    """Splitting basis (matrix columns) plus values."""

    def __init__(self, field, basis, values):
        self.field = field
        self.basis = tuple(tuple(row) for row in basis)
        self.values = tuple(Fraction(v) for v in values)
        self.n = len(self.values)

    def __repr__(self):
        return f"VNorm(values={[str(v) for v in self.values]})"

    def column(self, i):
        return [self.basis[r][i] for r in range(self.n)]

    def value(self, x):
        """alpha(x) by expansion in the splitting basis."""
        if all(c.is_exactly_zero() for c in x):
            return INF
        lam = linalg.solve_valued([list(r) for r in self.basis], [[c] for c in x])
        best = None
        bound = None
        for i in range(self.n):
            v = lam[i][0].valuation()
            if isinstance(v, AtLeast):
                b = Fraction(v.bound) + self.values[i]
                bound = b if bound is None else min(bound, b)
            elif v != INF:
                c = Fraction(v) + self.values[i]
                best = c if best is None else min(best, c)
        if best is None:
            return AtLeast(bound) if bound is not None else INF
        if bound is not None and bound <= best:
            raise PrecisionExhausted(
                "norm value hidden below the certified precision")
        return best


@dataclass(frozen=True)
class CompatibilityViolation:
    condition: str  # "a", "b" or "c"
    detail: str

    def __repr__(self):
        return f"violation of ({self.condition}): {self.detail}"


@dataclass
class DepthCertificate:
    form: QuadraticForm
    norm: VNorm
    eps: Fraction
    checked: tuple = ("a", "b", "c")

    def revalidate(self):
        res = check_compatibility(self.form, self.norm, self.eps)
        return isinstance(res, DepthCertificate)


def _gram_on_basis(q: QuadraticForm, norm: VNorm):
    cols = [norm.column(i) for i in range(norm.n)]
    qe = [q.evaluate(c) for c in cols]
    be = gram_of(q.polar_matrix(), cols, q.field.zero)
    return qe, be


def check_compatibility(q: QuadraticForm, norm: VNorm, eps) -> "DepthCertificate | CompatibilityViolation":
    """Verify (a), (b) on the splitting basis and (c) as nondegeneracy of
    the induced graded form; returns a certificate or the first violation."""
    eps = Fraction(eps)
    if q.n != norm.n:
        return CompatibilityViolation("a", "dimension mismatch")
    qe, be = _gram_on_basis(q, norm)
    g = norm.values
    for i in range(norm.n):
        thr = 2 * g[i]
        lb = qe[i].low_bound()
        if lb < thr:
            if qe[i].is_certified_nonzero():
                return CompatibilityViolation(
                    "b", f"v(q(e_{i})) = {lb} < {thr}")
            raise PrecisionExhausted(f"cannot certify v(q(e_{i})) >= {thr}")
    for i in range(norm.n):
        for j in range(i, norm.n):
            thr = g[i] + g[j] + eps
            lb = be[i][j].low_bound()
            if lb < thr:
                if be[i][j].is_certified_nonzero():
                    return CompatibilityViolation(
                        "a", f"v(b(e_{i},e_{j})) = {lb} < {thr}")
                raise PrecisionExhausted(
                    f"cannot certify v(b(e_{i},e_{j})) >= {thr}")
    k = q.field.residue_field
    lead = [[be[i][j].coeff_at(g[i] + g[j] + eps) for j in range(norm.n)]
            for i in range(norm.n)]
    try:
        if norm.n:
            linalg.invert_exact(lead, k.zero, k.one)
    except WittlabError:
        return CompatibilityViolation(
            "c", "induced graded bilinear form is degenerate")
    return DepthCertificate(QuadraticForm(q.field, [list(r) for r in q.U]),
                            norm, eps)


def require_certificate(q, norm, eps) -> DepthCertificate:
    res = check_compatibility(q, norm, eps)
    if isinstance(res, CompatibilityViolation):
        raise NotApplicable(repr(res))
    return res


def induced_space(q: QuadraticForm, cert: DepthCertificate) -> ShiftedQuadSpace:
    """Leading-coefficient graded space of the certified norm."""
    F = q.field
    k = F.residue_field
    g = cert.norm.values
    eps = cert.eps
    qe, be = _gram_on_basis(q, cert.norm)
    qv = [qe[i].coeff_at(2 * g[i]) for i in range(cert.norm.n)]
    bm = [[be[i][j].coeff_at(g[i] + g[j] + eps) for j in range(cert.norm.n)]
          for i in range(cert.norm.n)]
    v2 = F.v2
    if eps == 0:
        tag = "I"
    elif v2 != INF and eps == Fraction(v2):
        tag = "III"
    else:
        tag = "II"
    return ShiftedQuadSpace(k, v2, eps, list(g), qv, bm, tag)


# -- norm algebra ------------------------------------------------------------


def norm_sum(n1: VNorm, n2: VNorm) -> VNorm:
    assert n1.field == n2.field
    z = n1.field.zero
    n, m = n1.n, n2.n
    rows = []
    for i in range(n):
        rows.append(list(n1.basis[i]) + [z] * m)
    for i in range(m):
        rows.append([z] * n + list(n2.basis[i]))
    return VNorm(n1.field, rows, n1.values + n2.values)


def norm_shift(norm: VNorm, old_depth, new_depth) -> VNorm:
    """Raise the depth from old to new by lowering all values by half the
    difference (the depth-raising construction)."""
    old_depth, new_depth = Fraction(old_depth), Fraction(new_depth)
    if new_depth < old_depth:
        raise NotApplicable("norm_shift only raises the depth")
    if (2 * (new_depth - old_depth)).denominator != 1:
        raise GridViolation(
            f"depth step {new_depth - old_depth} is off the half-integer grid")
    shift = (new_depth - old_depth) / 2
    return VNorm(norm.field, norm.basis, [v - shift for v in norm.values])


def builder_binary(field, a, b):
    """A compatible norm for [a, b] on its standard basis, with its depth."""
    va, vb = a.valuation(), b.valuation()
    la = va if not isinstance(va, AtLeast) else None
    lb = vb if not isinstance(vb, AtLeast) else None
    e = [[field.one, field.zero], [field.zero, field.one]]
    la_bound, lb_bound = a.low_bound(), b.low_bound()
    if la is not None and lb is not None and la != INF and lb != INF \
            and la + lb <= 0:
        eps = -Fraction(la + lb) / 2
        if field.v2 != INF and eps >= Fraction(field.v2):
            raise NotApplicable(
                f"depth {eps} >= v(2); no compatible norm from this builder")
        return VNorm(field, e, [Fraction(la) / 2, Fraction(lb) / 2]), eps
    # v(a) + v(b) > 0 certified from here on
    if lb_bound < 0:
        h = Fraction(lb) / 2
        return VNorm(field, e, [-h, h]), Fraction(0)
    if la_bound < 0:
        h = Fraction(la) / 2
        return VNorm(field, e, [h, -h]), Fraction(0)
    return VNorm(field, e, [Fraction(0), Fraction(0)]), Fraction(0)


def builder_unary(field, a):
    """<a> in characteristic 0: depth exactly v(2)."""
    if field.char != 0:
        raise NotApplicable("one-dimensional forms are singular in char 2")
    va = a.valuation()
    if isinstance(va, AtLeast) or va == INF:
        raise NotApplicable("cannot build a norm on a (near) zero form")
    return VNorm(field, [[field.one]], [Fraction(va) / 2]), Fraction(field.v2)


def initial_norm(q: QuadraticForm) -> DepthCertificate:
    """Blockwise norms lifted to the maximal block depth.

    Binary blocks are raised to the common depth by lowering only their
    first value by the full difference, which keeps every value on the
    half-integer grid.
    """
    if q.n == 0:
        return require_certificate(q, VNorm(q.field, [], []), Fraction(0))
    blocks, M = symplectic_blocks(q)
    built = []
    for blk in blocks:
        if blk[0] == "line":
            built.append(builder_unary(q.field, blk[1]))
        else:
            built.append(builder_binary(q.field, blk[1], blk[2]))
    eps = max(b[1] for b in built)
    values = []
    for (norm, d) in built:
        vals = list(norm.values)
        if d < eps:
            vals[0] -= eps - d  # binary blocks only; lines sit at v(2) already
        values.extend(vals)
    full = VNorm(q.field, M, values)
    res = check_compatibility(q, full, eps)
    if isinstance(res, CompatibilityViolation):
        raise SingularForm(f"initial norm failed to certify: {res!r}")
    return res


def split_respecting_norm(q: QuadraticForm, cert: DepthCertificate):
    """Binary orthogonal blocks whose restricted norms stay eps-compatible.

    Returns a list of (BinaryForm coefficients (a, b), block values,
    block basis columns in ambient coordinates).
    """
    F = q.field
    eps = cert.eps
    if F.v2 != INF and eps >= Fraction(F.v2):
        raise NotApplicable("binary splitting requires eps < v(2)")
    vecs = [cert.norm.column(i) for i in range(cert.norm.n)]
    vals = list(cert.norm.values)
    G = gram_of(q.polar_matrix(), vecs, F.zero)
    blocks = []
    while vecs:
        m = len(vecs)
        lead = None
        for i in range(m):
            for j in range(i + 1, m):
                thr = vals[i] + vals[j] + eps
                c = G[i][j].coeff_at(thr)
                if not c.is_zero():
                    lead = (i, j)
                    break
            if lead:
                break
        if lead is None:
            raise PrecisionExhausted(
                "no pivot pair achieves equality; certificate inconsistent")
        i, j = lead
        gij = G[i][j]
        giv = gij.inv()
        e = vecs[i]
        f = [c * giv for c in vecs[j]]  # b(e, f) = 1
        ge, gf = vals[i], vals[j] - Fraction(gij.valuation())
        blocks.append(((q.evaluate(e), q.evaluate(f)), (ge, gf), (e, f)))
        keep = [r for r in range(m) if r not in (i, j)]
        # orthogonal projection away from span(e, f): the determinant
        # formulas guarantee the projection never lowers the norm value
        gee, gff, gef = G[i][i], G[j][j] * giv * giv, F.one
        d0 = gee * gff - gef * gef
        d0i = d0.inv()
        lam = {r: (G[r][i] * gff - gef * (G[r][j] * giv)) * d0i for r in keep}
        mu = {r: (gee * (G[r][j] * giv) - G[r][i] * gef) * d0i for r in keep}
        vecs = [_combine(vecs[r], [(-lam[r], e), (-mu[r], f)]) for r in keep]
        vals = [vals[r] for r in keep]
        # b(u', w') = b(u, w') since u' is already orthogonal to e and f
        G = [[G[r][c] - lam[c] * G[r][i] - mu[c] * (G[r][j] * giv)
              for c in keep] for r in keep]
    return blocks


@dataclass
class NotReducible:
    """Evidence that the induced space at this depth is not metabolic."""

    depth: Fraction
    evidence: dict  # orbit -> nonzero residue invariant

    def __repr__(self):
        return f"NotReducible(depth={self.depth})"


def depth_reduce(q: QuadraticForm, cert: DepthCertificate):
    """One constructive reduction step, or NotReducible with evidence."""
    gamma = cert.eps
    if gamma <= 0:
        raise NotApplicable("depth_reduce needs a positive depth")
    S = induced_space(q, cert)
    planes = graded.metabolic_planes(S)
    if planes is None:
        return NotReducible(gamma, graded.orbit_invariants(S))
    F = q.field
    cols = [cert.norm.column(i) for i in range(cert.norm.n)]

    def lift_vec(gv):
        amb = [F.zero] * q.n
        for i, c in enumerate(gv.coords):
            if c.is_zero():
                continue
            h = F.lift_homog(c, gv.degree - S.degrees[i])
            for r in range(q.n):
                amb[r] = amb[r] + h * cols[i][r]
        return amb

    es, fs, e_vals, f_vals = [], [], [], []
    for (x, y) in planes:
        es.append(lift_vec(x))
        e_vals.append(x.degree)
        fs.append(lift_vec(y))
        f_vals.append(y.degree)
    Ge = gram_of(q.polar_matrix(), es, F.zero)
    terms = [gamma]
    for l, e in enumerate(es):
        qv = q.evaluate(e).low_bound()
        if qv != INF:
            terms.append(Fraction(qv) / 2 - e_vals[l])
        for m in range(len(es)):
            if m == l:
                continue
            bb = Ge[l][m].low_bound()
            if bb != INF:
                terms.append(Fraction(bb) - e_vals[l] - e_vals[m] - gamma)
    eps_prime = min(terms)
    if eps_prime <= 0:
        raise PrecisionExhausted(
            "metabolic witness slack not certified positive")
    basis_cols = es + fs
    values = [v + eps_prime for v in e_vals] + f_vals
    M = [[basis_cols[c][r] for c in range(len(basis_cols))] for r in range(q.n)]
    new_norm = VNorm(F, M, values)
    res = check_compatibility(q, new_norm, gamma - eps_prime)
    if isinstance(res, CompatibilityViolation):
        raise PrecisionExhausted(
            f"reduced norm failed to re-certify: {res!r}")
    return res


def wildness_index(q: QuadraticForm):
    """(minimal depth, certificate at that depth); loops depth_reduce."""
    cert = initial_norm(q)
    while cert.eps > 0:
        step = depth_reduce(q, cert)
        if isinstance(step, NotReducible):
            break
        cert = step
    return cert.eps, cert
