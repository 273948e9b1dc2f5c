"""Scalar and polynomial arithmetic contracts."""

import random

import gmpy2
import mpmath
import pytest
from gmpy2 import mpq

from ratdyn.arithmetic import (
    FpElem,
    GaussRat,
    MPReal,
    RatFunc,
    UniPoly,
    bigrat,
    fp_inverse,
    height,
    mp_pi,
    unipoly_gcd,
)
from ratdyn.errors import DivisionByZero, ZeroHeight, ZeroInverse

from oracles import brute_fp_inverse


def rand_mpq(rng, span=50):
    return mpq(rng.randint(-span, span), rng.randint(1, span))


def test_bigrat_normalization_and_field_laws():
    rng = random.Random(1)
    for _ in range(200):
        a, b, c = (rand_mpq(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        q = a + b * c
        assert q.denominator > 0
        assert gmpy2.gcd(q.numerator, q.denominator) == 1


def test_bigrat_parse():
    assert bigrat("3/7") == mpq(3, 7)
    assert bigrat(-2, 4) == mpq(-1, 2)


def test_height_examples():
    assert height(mpq(22, 7)) == 5
    assert height(mpq(1)) == 1
    assert height(mpq(-3, 16)) == 5
    with pytest.raises(ZeroHeight):
        height(mpq(0))


def test_gauss_rat_field_axioms():
    rng = random.Random(2)
    for _ in range(100):
        a = GaussRat(rand_mpq(rng), rand_mpq(rng))
        b = GaussRat(rand_mpq(rng), rand_mpq(rng))
        c = GaussRat(rand_mpq(rng), rand_mpq(rng))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        if a:
            assert a * a.inverse() == GaussRat(1, 0)
    i = GaussRat.i()
    assert i * i == GaussRat(-1, 0)
    # the coefficient 1/(2i) equals -i/2
    assert 1 / (2 * i) == GaussRat(0, mpq(-1, 2))
    with pytest.raises(DivisionByZero):
        GaussRat(0, 0).inverse()


def test_fp_inverse_examples_and_exhaustive():
    assert fp_inverse(FpElem(5, 7)) == FpElem(3, 7)
    assert brute_fp_inverse(5, 7) == 3
    p = 101
    for a in range(1, p):
        assert fp_inverse(FpElem(a, p)).residue == brute_fp_inverse(a, p)
    assert fp_inverse(FpElem(1, 10007)) == FpElem(1, 10007)
    assert fp_inverse(FpElem(10006, 10007)) == FpElem(10006, 10007)
    with pytest.raises(ZeroInverse):
        fp_inverse(FpElem(0, 7))


def test_fp_elem_ops():
    a = FpElem(5, 7)
    assert (a + 3) == FpElem(1, 7)
    assert (2 - a) == FpElem(4, 7)
    assert (a * a) == FpElem(4, 7)
    assert (a / FpElem(3, 7)) == FpElem(5 * 5 % 7, 7)
    assert a ** 6 == FpElem(1, 7)


def poly_q(*cs):
    return UniPoly([mpq(c) for c in cs])


def test_unipoly_gcd_examples():
    # gcd(x^2 - 1, x^2 - 2x + 1) = x - 1
    g = unipoly_gcd(poly_q(-1, 0, 1), poly_q(1, -2, 1))
    assert g == poly_q(-1, 1)
    # gcd with zero returns the other argument, made monic
    g = unipoly_gcd(poly_q(2, 4), UniPoly([]))
    assert g == poly_q(1, 2).monic()
    # over F_5: x = 3 is a common root of x^2 + 1 and x + 2
    f5 = lambda *cs: UniPoly([FpElem(c, 5) for c in cs])
    g = unipoly_gcd(f5(1, 0, 1), f5(2, 1))
    assert g == f5(2, 1)


def test_unipoly_gcd_divides_random():
    rng = random.Random(3)
    for trial in range(1000):
        if trial % 2:
            coef = lambda: mpq(rng.randint(-5, 5), rng.randint(1, 3))
        else:
            coef = lambda: FpElem(rng.randint(0, 10006), 10007)
        a = UniPoly([coef() for _ in range(rng.randint(1, 6))])
        b = UniPoly([coef() for _ in range(rng.randint(1, 6))])
        g = unipoly_gcd(a, b)
        if g.is_zero():
            assert a.is_zero() and b.is_zero()
            continue
        assert (a % g).is_zero()
        assert (b % g).is_zero()


def test_unipoly_degree_multiplicativity():
    rng = random.Random(4)
    for _ in range(100):
        a = UniPoly([rand_mpq(rng) for _ in range(rng.randint(1, 5))] + [mpq(1)])
        b = UniPoly([rand_mpq(rng) for _ in range(rng.randint(1, 5))] + [mpq(1)])
        assert (a * b).degree == a.degree + b.degree


def test_unipoly_divmod_roundtrip():
    rng = random.Random(5)
    for _ in range(200):
        a = UniPoly([rand_mpq(rng) for _ in range(rng.randint(0, 7))])
        b = UniPoly([rand_mpq(rng) for _ in range(rng.randint(1, 5))])
        if b.is_zero():
            continue
        q, r = a.divmod(b)
        assert q * b + r == a
        assert r.degree < b.degree


def test_ratfunc_normalization():
    # (x^2 - 1) / (2x - 2) reduces to (x + 1) / 2
    f = RatFunc(poly_q(-1, 0, 1), poly_q(-2, 2))
    assert f.den == poly_q(1)
    assert f.num == poly_q(mpq(1, 2), mpq(1, 2))
    assert f.evaluate(mpq(3)) == mpq(2)
    assert f.degree == 1


def test_mpreal_recompute_at_double_precision():
    rng = random.Random(6)
    for _ in range(50):
        q = mpq(rng.randint(1, 999), rng.randint(1, 999))
        for b in (64, 128):
            x = MPReal.from_rational(q, b)
            ops = [
                lambda t: t * t + t,
                lambda t: (t + 1) / (t * t + 3),
                lambda t: t.sqrt(),
            ]
            for op in ops:
                lo = op(x)
                hi = op(MPReal.from_rational(q, 2 * b))
                err = abs(float(lo - hi))
                assert err <= 2.0 ** (2 - b) * max(abs(float(hi)), 1.0)


def test_mpreal_trig_against_mpmath():
    rng = random.Random(7)
    bits = 120
    mpmath.mp.prec = bits + 30
    for _ in range(30):
        q = mpq(rng.randint(-400, 400), rng.randint(1, 100))
        x = MPReal.from_rational(q, bits)
        # evaluate mpmath at the exact dyadic argument MPReal holds, so the
        # comparison isolates the trig evaluation itself
        s, m, e, _ = x.decompose()
        arg = mpmath.mpf(int(m)) * mpmath.mpf(2) ** e * s
        pairs = [
            (x.tan(), mpmath.tan(arg)),
            (x.atan(), mpmath.atan(arg)),
            (x.cos(), mpmath.cos(arg)),
        ]
        for got, want in pairs:
            # 4 ulp at `bits` is at most 2^(2-bits) relative
            tol = mpmath.mpf(2) ** (2 - bits)
            sign, mant, expo, prec = got.decompose()
            exact = mpmath.mpf(int(mant)) * mpmath.mpf(2) ** expo * sign
            assert abs(exact - want) <= tol * max(abs(want), mpmath.mpf(1))


def test_mpreal_decompose_roundtrip():
    x = MPReal.from_rational(mpq(3, 2), 64)
    sign, mant, expo, prec = x.decompose()
    assert sign == 1 and prec == 64
    assert mpq(int(mant), 1) * mpq(2) ** expo == mpq(3, 2)
    z = MPReal.from_rational(mpq(0), 64)
    assert z.decompose()[0] == 0


def test_mpreal_precision_tagging():
    a = MPReal.from_rational(mpq(1, 3), 80)
    b = MPReal.from_rational(mpq(1, 5), 160)
    assert (a + b).precision_bits == 160
    assert mp_pi(200).precision_bits == 200
