"""Property tests for the packed polynomial kernels against schoolbook
arithmetic. These kernels sit under every degree-growth run, so they get
hammered with random inputs at a few sizes."""

import random

import numpy as np
import pytest

from ratdyn._polyfast import (
    fp_divexact,
    fp_gcd,
    fp_mul,
    fp_trim,
    good_primes,
    zt_content,
    zt_divexact,
    zt_gcd3,
    zt_mul,
    zt_primitive,
    zt_trim,
)

from oracles import mul_poly

P = 2147483647


def rand_fp(rng, n, p=P):
    a = [rng.randrange(p) for _ in range(n)]
    a[-1] = rng.randrange(1, p)
    return np.array(a, dtype=np.int64)


def rand_zt(rng, n, bits):
    a = [rng.randrange(-(1 << bits), 1 << bits) for _ in range(n)]
    while a[-1] == 0:
        a[-1] = rng.randrange(-(1 << bits), 1 << bits)
    return a


def test_fp_mul_matches_schoolbook():
    rng = random.Random(11)
    for _ in range(25):
        a = rand_fp(rng, rng.randrange(1, 60))
        b = rand_fp(rng, rng.randrange(1, 60))
        want = [int(c) % P for c in mul_poly([int(c) for c in a], [int(c) for c in b])]
        assert list(fp_mul(a, b, P)) == list(fp_trim(np.array(want, dtype=np.int64)))


def test_fp_mul_large_sizes():
    rng = random.Random(12)
    a = rand_fp(rng, 3000)
    b = rand_fp(rng, 2500)
    got = fp_mul(a, b, P)
    # spot-check by evaluation at a random point
    x = rng.randrange(P)

    def ev(poly):
        acc = 0
        for c in reversed(list(poly)):
            acc = (acc * x + int(c)) % P
        return acc

    assert ev(got) == ev(a) * ev(b) % P


def test_fp_mul_rejects_oversized_inputs():
    n = (1 << 17) + 1
    a = np.ones(n, dtype=np.int64)
    with pytest.raises(ValueError):
        fp_mul(a, a, P)


def test_fp_gcd_recovers_planted_factor():
    rng = random.Random(13)
    for _ in range(12):
        g = rand_fp(rng, rng.randrange(2, 12))
        a = fp_mul(g, rand_fp(rng, rng.randrange(1, 15)), P)
        b = fp_mul(g, rand_fp(rng, rng.randrange(1, 15)), P)
        d = fp_gcd(a, b, P)
        # the planted factor divides the gcd, so it is at least that large
        assert len(d) >= len(g)
        # and dividing either input by the gcd stays exact
        fp_divexact(a, d, P)
        fp_divexact(b, d, P)


def test_fp_gcd_of_coprime_is_constant():
    a = np.array([1, 1], dtype=np.int64)
    b = np.array([1, 0, 1], dtype=np.int64)
    assert list(fp_gcd(a, b, P)) == [1]


def test_fp_divexact_rejects_inexact():
    with pytest.raises(ArithmeticError):
        fp_divexact(
            np.array([1, 0, 1], dtype=np.int64), np.array([1, 1], dtype=np.int64), P
        )


def test_good_primes_are_prime_and_distinct():
    ps = good_primes(5)
    assert len(set(ps)) == 5
    for p in ps:
        assert p > 1 << 30
        for q in range(2, 2000):
            assert p % q != 0
    # avoid list forces residues to stay nonzero
    ps = good_primes(3, avoid=(2147483647,))
    assert 2147483647 not in ps


def test_zt_mul_matches_schoolbook():
    rng = random.Random(21)
    for _ in range(25):
        a = rand_zt(rng, rng.randrange(1, 50), rng.randrange(1, 80))
        b = rand_zt(rng, rng.randrange(1, 50), rng.randrange(1, 80))
        assert list(zt_mul(a, b)) == [int(c) for c in zt_trim(mul_poly(a, b))]


def test_zt_mul_huge_coefficients():
    rng = random.Random(22)
    a = rand_zt(rng, 30, 4000)
    b = rand_zt(rng, 25, 4000)
    assert list(zt_mul(a, b)) == [int(c) for c in zt_trim(mul_poly(a, b))]


def test_zt_content_and_primitive():
    assert zt_content([6, -9, 12]) == 3
    assert zt_primitive([6, -9, 12]) == [2, -3, 4]
    assert zt_content([-4, -8]) == 4
    # primitive part is normalized to a positive leading coefficient
    assert zt_primitive([4, -8]) == [-1, 2]


def test_zt_divexact_roundtrip_and_rejection():
    rng = random.Random(23)
    for _ in range(15):
        g = rand_zt(rng, rng.randrange(1, 10), 30)
        q = rand_zt(rng, rng.randrange(1, 10), 30)
        a = zt_mul(g, q)
        assert [int(c) for c in zt_divexact(a, g)] == q
    # a polynomial that is not a multiple comes back as None
    assert zt_divexact([1, 0, 1], [1, 1]) is None


def test_zt_gcd3_planted_factor():
    rng = random.Random(24)
    for _ in range(10):
        g = rand_zt(rng, rng.randrange(2, 8), 25)
        parts = [zt_mul(g, rand_zt(rng, rng.randrange(1, 8), 25)) for _ in range(3)]
        got, qa, qb, qc, cont = zt_gcd3(*parts)
        # input == cont * gcd * cofactor, exactly, for all three
        for orig, quot in zip(parts, (qa, qb, qc)):
            rebuilt = [int(cont) * int(c) for c in zt_mul(got, quot)]
            assert rebuilt == [int(c) for c in orig]
        # the reported gcd is a multiple of the planted primitive factor
        assert zt_divexact(got, zt_primitive(g)) is not None


def test_zt_gcd3_coprime_inputs():
    got, qa, qb, qc, cont = zt_gcd3([1, 1], [1, 0, 1], [2, -1])
    assert [int(c) for c in got] == [1]
    assert int(cont) == 1
    assert [int(c) for c in qa] == [1, 1]
    assert [int(c) for c in qb] == [1, 0, 1]
    assert [int(c) for c in qc] == [2, -1]
