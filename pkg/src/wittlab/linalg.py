"""Small dense linear algebra over the library's exact and valued fields.

Two regimes:

* residue fields (GF(2^m), GF(2^m)(x)): arithmetic is exact, any nonzero
  pivot works;
* valued base fields: entries carry certified precision, so pivots are
  chosen certified-nonzero with minimal valuation (maximal confidence),
  ties broken lexicographically for determinism.  Rank decisions use a
  division-free elimination so that exact zeros stay exact: a singular
  matrix of exact entries is *certified* singular instead of drowning in
  lost precision.
"""

from __future__ import annotations

from .errors import PrecisionExhausted, SingularMatrix


def mat_mul(A, B, zero):
    n, k, m = len(A), len(B), len(B[0])
    out = [[zero for _ in range(m)] for _ in range(n)]
    for i in range(n):
        for j in range(m):
            acc = zero
            for s in range(k):
                acc = acc + A[i][s] * B[s][j]
            out[i][j] = acc
    return out


def transpose(A):
    return [list(col) for col in zip(*A)]


def identity(n, zero, one):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


# -- exact residue-field elimination ---------------------------------------


def rref_exact(A):
    """Row-reduce a matrix over an exact field; returns (R, pivot columns)."""
    R = [row[:] for row in A]
    if not R:
        return R, []
    rows, cols = len(R), len(R[0])
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if not R[i][c].is_zero()), None)
        if pr is None:
            continue
        R[r], R[pr] = R[pr], R[r]
        inv = R[r][c].inv()
        R[r] = [inv * v for v in R[r]]
        for i in range(rows):
            if i != r and not R[i][c].is_zero():
                f = R[i][c]
                R[i] = [R[i][j] - f * R[r][j] for j in range(cols)]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return R, pivots


def kernel_exact(A, zero, one):
    """Basis of the right kernel of A over an exact field."""
    if not A:
        return []
    R, pivots = rref_exact(A)
    cols = len(A[0])
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero] * cols
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = zero - R[r][fc]
        basis.append(v)
    return basis


def invert_exact(A, zero, one):
    n = len(A)
    aug = [A[i][:] + identity(n, zero, one)[i] for i in range(n)]
    R, pivots = rref_exact(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix over the residue field is singular")
    return [row[n:] for row in R]


# -- valued-field elimination -----------------------------------------------


def _pick_pivot(R, rows_left, cols_left):
    """Certified-nonzero entry of minimal valuation; None if all zero."""
    best = None
    for i in rows_left:
        for j in cols_left:
            x = R[i][j]
            if x.is_certified_nonzero():
                v = x.valuation()
                if best is None or v < best[0] or (v == best[0] and (i, j) < best[1]):
                    best = (v, (i, j))
    return best[1] if best else None


def is_invertible_certified(A) -> bool:
    """Certified invertibility decision over a valued field.

    Division-free elimination; True when n pivots are certified nonzero,
    False when the remaining block is exactly zero, PrecisionExhausted
    when the block is merely zero-to-precision.
    """
    n = len(A)
    if n == 0:
        return True
    R = [row[:] for row in A]
    rows_left = list(range(n))
    cols_left = list(range(n))
    while rows_left:
        piv = _pick_pivot(R, rows_left, cols_left)
        if piv is None:
            if all(R[i][j].is_exactly_zero() for i in rows_left for j in cols_left):
                return False
            raise PrecisionExhausted(
                "cannot certify invertibility: remaining entries are "
                "indistinguishable from zero at this precision")
        pi, pj = piv
        p = R[pi][pj]
        for i in rows_left:
            if i == pi:
                continue
            f = R[i][pj]
            if f.is_exactly_zero():
                continue
            R[i] = [p * R[i][j] - f * R[pi][j] for j in range(n)]
        rows_left.remove(pi)
        cols_left.remove(pj)
    return True


def solve_valued(A, B):
    """Solve A X = B columnwise over a valued field (division allowed)."""
    n = len(A)
    m = len(B[0])
    R = [A[i][:] + B[i][:] for i in range(n)]
    rows_left = list(range(n))
    cols_left = list(range(n))
    order = []
    while rows_left:
        piv = _pick_pivot(R, rows_left, cols_left)
        if piv is None:
            if all(R[i][j].is_exactly_zero() for i in rows_left for j in cols_left):
                raise SingularMatrix("valued matrix is singular")
            raise PrecisionExhausted("cannot certify a pivot while solving")
        pi, pj = piv
        ip = R[pi][pj].inv()
        R[pi] = [ip * v for v in R[pi]]
        for i in range(n):
            if i != pi and not R[i][pj].is_exactly_zero():
                f = R[i][pj]
                R[i] = [R[i][j] - f * R[pi][j] for j in range(n + m)]
        order.append((pi, pj))
        rows_left.remove(pi)
        cols_left.remove(pj)
    X = [[None] * m for _ in range(n)]
    for pi, pj in order:
        for j in range(m):
            X[pj][j] = R[pi][n + j]
    return X
