import random

import pytest

from wittlab.errors import DegenerateForm, TooLarge, UnsupportedResidueField
from wittlab.fields import GF2m, RatFuncField
from wittlab.residue_witt import (KQuadForm, SeparatedSpace,
                                  SymplecticQuadSpace, arf_invariant,
                                  functor_U, k_symplectic_blocks,
                                  kquad_anisotropic_part,
                                  kquad_isotropic_vector, kquad_witt_class,
                                  sq_normalize, sq_witt_class, ssq_normalize,
                                  ssq_witt_class, tensor_of, w_class,
                                  w_class_of_gram, wedge_of,
                                  witt_decompose_small, wq_raw_class)

K2 = GF2m(1)
K4 = GF2m(2)
RX = RatFuncField(1)


def sq(k, *pairs):
    return SymplecticQuadSpace(k, tuple(pairs))


def sep(k, *pairs):
    return SeparatedSpace(k, tuple(pairs))


# -- wedge classes -------------------------------------------------------------


def test_sq_class_known_values():
    a = RX.x + RX.one
    assert sq_witt_class(sq(RX, (a, a))).is_zero()  # <a, a> metabolic
    xx = RX.x * RX.x
    assert sq_witt_class(sq(RX, (RX.one, xx))).is_zero()  # x^2 is a square
    w = sq_witt_class(sq(RX, (RX.one, RX.x)))
    assert not w.is_zero()
    assert w.coordinate() == RX.one  # the basis coordinate of 1 wedge x


def test_sq_class_brute_force_cross_check():
    # <1, x> over GF(2)(x): no Lagrangian among low-degree coefficients
    S = sq(RX, (RX.one, RX.x))
    found = False
    polys = [RX.from_poly(c) for c in
             [(0,), (1,), (0, 1), (1, 1), (0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)]]
    for c1 in polys:
        for c2 in polys:
            if c1.is_zero() and c2.is_zero():
                continue
            val = c1 * c1 * RX.one + c2 * c2 * RX.x
            if val.is_zero():
                found = True
    assert not found


def test_sq_moves_preserve_class():
    rng = random.Random(0)
    for _ in range(50):
        a, b, c, d = (RX.random(rng, 2) for _ in range(4))
        xi = RX.random(rng, 1)
        if xi.is_zero():
            continue
        base = sq_witt_class(sq(RX, (a, b), (c, d)))
        move2 = sq_witt_class(sq(RX, (a, xi * xi * b), (c, d)))
        swap = sq_witt_class(sq(RX, (xi * xi * a, b), (c, d)))
        assert move2 == swap
        move3 = sq_witt_class(sq(RX, (a + c, b), (c, b + d)))
        assert move3 == base


def test_sq_random_symplectic_base_change_invariance():
    rng = random.Random(1)
    for _ in range(25):
        pairs = [(K4.random(rng), K4.random(rng)) for _ in range(2)]
        S = sq(K4, *pairs)
        qvals = [pairs[0][0], pairs[0][1], pairs[1][0], pairs[1][1]]
        bmat = [[K4.zero] * 4 for _ in range(4)]
        bmat[0][1] = bmat[1][0] = K4.one
        bmat[2][3] = bmat[3][2] = K4.one
        # scramble by a random invertible change preserving nothing special
        n = 4
        M = [[K4.one if i == j else K4.zero for j in range(n)] for i in range(n)]
        for _ in range(8):
            i, j = rng.randrange(n), rng.randrange(n)
            if i == j:
                continue
            c = K4.random(rng)
            for r in range(n):
                M[r][i] = M[r][i] + c * M[r][j]
        qv2 = []
        for cidx in range(n):
            col = [M[r][cidx] for r in range(n)]
            acc = K4.zero
            for r in range(n):
                acc = acc + col[r] * col[r] * qvals[r]
            qv2.append(acc)
        bm2 = [[K4.zero] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                acc = K4.zero
                for r in range(n):
                    for s in range(n):
                        acc = acc + M[r][i] * M[s][j] * bmat[r][s]
                bm2[i][j] = acc
        S2, _ = sq_normalize(qv2, bm2, K4)
        assert sq_witt_class(S2) == sq_witt_class(S)


def test_sq_normalize_errors():
    deg = [[K2.zero, K2.zero], [K2.zero, K2.zero]]
    with pytest.raises(DegenerateForm):
        sq_normalize([K2.one, K2.one], deg, K2)


# -- tensor classes ---------------------------------------------------------------


def test_ssq_class_examples():
    assert ssq_witt_class(sep(K2, (K2.zero, K2.one))).is_zero()
    t = ssq_witt_class(sep(K2, (K2.one, K2.one)))
    assert not t.is_zero() and t.coords[0] == K2.one
    s = ssq_witt_class(sep(RX, (RX.one, RX.x), (RX.x, RX.one)))
    assert not s.is_zero()
    # coordinates on 1@x and x@1 both nonzero
    assert not s.coords[1].is_zero() and not s.coords[2].is_zero()


def test_ssq_moves_preserve_class():
    rng = random.Random(2)
    for _ in range(50):
        a, b, c, d = (RX.random(rng, 2) for _ in range(4))
        xi = RX.random(rng, 1)
        if xi.is_zero():
            continue
        base = ssq_witt_class(sep(RX, (a, b), (c, d)))
        move1 = ssq_witt_class(sep(RX, (xi * xi * a, b), (c, d)))
        move1b = ssq_witt_class(sep(RX, (a, xi * xi * b), (c, d)))
        assert move1 == move1b
        move2 = ssq_witt_class(sep(RX, (a + c, b), (c, b + d)))
        assert move2 == base


def test_functor_square_commutes():
    rng = random.Random(3)
    for _ in range(200):
        pairs = tuple((RX.random(rng, 2), RX.random(rng, 2))
                      for _ in range(rng.randrange(1, 4)))
        S = sep(RX, *pairs)
        assert ssq_witt_class(S).to_wedge() == sq_witt_class(functor_U(S))
    assert functor_U(sep(RX)).pairs == ()


def test_ssq_normalize_roundtrip():
    qv = [K4.one, K4.elem(2)]
    qv2 = [K4.elem(3), K4.zero]
    S = ssq_normalize(qv, qv2, K4)
    assert S.pairs == ((K4.one, K4.elem(3)), (K4.elem(2), K4.zero))


# -- Arf and small-space oracles ---------------------------------------------------


def test_arf_known_values():
    assert arf_invariant([(K2.one, K2.one)], K2).arf == 1
    assert arf_invariant([(K2.one, K2.zero)], K2).arf == 0
    assert arf_invariant([(K2.one, K2.one), (K2.one, K2.one)], K2).arf == 0


def test_arf_matches_enumeration_oracle():
    rng = random.Random(4)
    for k in (K2, K4):
        for _ in range(40):
            pairs = [(k.random(rng), k.random(rng))
                     for _ in range(rng.randrange(1, 3))]
            rows = [[k.zero] * (2 * len(pairs)) for _ in range(2 * len(pairs))]
            for i, (a, b) in enumerate(pairs):
                rows[2 * i][2 * i] = a
                rows[2 * i + 1][2 * i + 1] = b
                rows[2 * i][2 * i + 1] = k.one
            form = KQuadForm(k, rows)
            hyper = kquad_anisotropic_part(form).n == 0
            assert hyper == (arf_invariant(pairs, k).arf == 0)


def test_arf_additivity():
    rng = random.Random(5)
    for _ in range(100):
        p1 = [(K4.random(rng), K4.random(rng))]
        p2 = [(K4.random(rng), K4.random(rng)) for _ in range(2)]
        assert (arf_invariant(p1 + p2, K4).arf
                == arf_invariant(p1, K4).arf ^ arf_invariant(p2, K4).arf)


def test_arf_unsupported_over_ratfunc():
    with pytest.raises(UnsupportedResidueField):
        arf_invariant([(RX.one, RX.x)], RX)
    raw = wq_raw_class([(RX.one, RX.x)], RX)
    assert not raw.decides()
    assert raw.arf_representative == RX.x


def test_witt_decompose_small():
    hyper = sq(K2, (K2.zero, K2.one))
    assert witt_decompose_small(hyper).dim() == 0
    # every GF(4) element is a square: wedge trivial, Lagrangian exists
    s = sq(K4, (K4.one, K4.elem(2)))
    assert witt_decompose_small(s).dim() == 0
    aniso = KQuadForm.binary(K2, K2.one, K2.one)
    part = witt_decompose_small(aniso)
    assert part.n == 2
    with pytest.raises(TooLarge):
        witt_decompose_small(sq(K2, *[(K2.one, K2.one)] * 13))


def test_oracle_equivalence_small():
    rng = random.Random(6)
    for k in (K2, K4):
        for _ in range(60):
            pairs = tuple((k.random(rng), k.random(rng))
                          for _ in range(rng.randrange(1, 4)))
            S = sq(k, *pairs)
            assert (sq_witt_class(S).is_zero()
                    == (witt_decompose_small(S).dim() == 0))
            P = sep(k, *pairs)
            assert (ssq_witt_class(P).is_zero()
                    == (witt_decompose_small(P).dim() == 0))


def test_kquad_isotropic_vector_constructive():
    rng = random.Random(7)
    for k in (K2, K4, GF2m(3)):
        for _ in range(60):
            n = rng.choice((2, 4))
            rows = [[k.zero] * n for _ in range(n)]
            for i in range(0, n, 2):
                rows[i][i] = k.random(rng)
                rows[i + 1][i + 1] = k.random(rng)
                rows[i][i + 1] = k.one
            form = KQuadForm(k, rows)
            vec = kquad_isotropic_vector(form)
            if vec is None:
                assert kquad_anisotropic_part(form).n == form.n
            else:
                assert not all(c.is_zero() for c in vec)
                assert form.evaluate(vec).is_zero()


def test_w_class():
    assert w_class([K2.one], K2).bit == 1
    assert w_class([K2.one, K2.one], K2).bit == 0
    rng = random.Random(8)
    for _ in range(20):
        c = K4.random(rng)
        if not c.is_zero():
            assert w_class([c], K4).bit == 1
    with pytest.raises(UnsupportedResidueField):
        w_class([RX.one], RX)
    with pytest.raises(DegenerateForm):
        w_class([K2.zero], K2)


def test_w_class_of_gram():
    # <1,1> has an isotropic diagonal but as a bilinear Gram it is the
    # identity, class 0 via two lines
    g = [[K2.one, K2.zero], [K2.zero, K2.one]]
    assert w_class_of_gram(g, K2).bit == 0
    g = [[K2.one]]
    assert w_class_of_gram(g, K2).bit == 1
    alt = [[K2.zero, K2.one], [K2.one, K2.zero]]
    assert w_class_of_gram(alt, K2).bit == 0


def test_k_symplectic_blocks_roundtrip():
    rng = random.Random(9)
    for _ in range(30):
        n = 4
        rows = [[K4.random(rng) if j >= i else K4.zero for j in range(n)]
                for i in range(n)]
        form = KQuadForm(K4, rows)
        B = form.polar_matrix()
        try:
            pairs, M = k_symplectic_blocks(form)
        except DegenerateForm:
            continue
        assert len(pairs) == 2
        cls = kquad_witt_class(form)
        assert cls.arf == arf_invariant(pairs, K4).arf
