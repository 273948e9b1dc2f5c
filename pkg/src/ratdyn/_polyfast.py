"""Fast univariate polynomial kernels for degree-growth computations.

Two coefficient domains, same little-endian list/array convention:

* F_p (p < 2^31): numpy int64 arrays, Kronecker-substitution multiply,
  vectorized Euclidean gcd and exact division.
* Z[t]: plain Python int lists, all heavy lifting pushed into gmpy2
  big-integer arithmetic by evaluating at t = 2^B. Multiplication picks B
  from coefficient bounds and is exact by construction; gcd and exact
  division are heuristic-with-certificate: every candidate is verified by
  an exact re-multiplication, so a returned answer is always correct and
  a lucky-guess failure only triggers a retry at larger B.
"""

import numpy as np
from gmpy2 import gcd as zgcd
from gmpy2 import is_prime, mpz


# ---------------------------------------------------------------- F_p kernel

def fp_trim(a):
    nz = np.nonzero(a)[0]
    if len(nz) == 0:
        return a[:0]
    return a[: nz[-1] + 1]


def fp_mul(a, b, p):
    """Product of int64 coefficient arrays mod p via Kronecker packing.

    Coefficients are packed into 10-byte lanes (80 bits), which holds any
    convolution sum of 31-bit residues up to length ~2^17.
    """
    if len(a) == 0 or len(b) == 0:
        return np.zeros(0, dtype=np.int64)
    if min(len(a), len(b)) > 1 << 17:
        raise ValueError("fp_mul lane width exceeded")

    def pack(x):
        buf = np.zeros((len(x), 10), dtype=np.uint8)
        buf[:, :8] = x.astype(np.uint64).view(np.uint8).reshape(len(x), 8)
        return int.from_bytes(buf.tobytes(), "little")

    c = pack(a) * pack(b)
    n = len(a) + len(b) - 1
    raw = c.to_bytes(10 * n + 16, "little")
    arr = np.frombuffer(raw[: 10 * n], dtype=np.uint8).reshape(n, 10)
    lo = arr[:, :8].copy().view(np.uint64).reshape(n)
    hi16 = arr[:, 8].astype(np.uint64) + (arr[:, 9].astype(np.uint64) << 8)
    out = (lo % p + (hi16 % p) * np.uint64(2**64 % p)) % p
    return fp_trim(out.astype(np.int64))


def fp_gcd(a, b, p):
    """Monic gcd mod p by the Euclidean algorithm, vectorized inner step."""
    a, b = fp_trim(a % p), fp_trim(b % p)
    while len(b):
        if len(a) < len(b):
            a, b = b, a
            continue
        db = len(b) - 1
        inv_lb = pow(int(b[-1]), -1, p)
        r = a.copy()
        while len(r) and len(r) - 1 >= db:
            q = int(r[-1]) * inv_lb % p
            if q:
                r[len(r) - 1 - db : len(r) - 1] = (
                    r[len(r) - 1 - db : len(r) - 1] - q * b[:-1]
                ) % p
            r = fp_trim(r[:-1])
        a, b = b, r
    if len(a):
        a = a * pow(int(a[-1]), -1, p) % p
    return a


def fp_divexact(a, b, p):
    """a // b mod p, asserting zero remainder."""
    db = len(b) - 1
    inv_lb = pow(int(b[-1]), -1, p)
    q = np.zeros(len(a) - db, dtype=np.int64)
    r = a.copy()
    while len(r) and len(r) - 1 >= db:
        c = int(r[-1]) * inv_lb % p
        q[len(r) - 1 - db] = c
        if c:
            r[len(r) - 1 - db : len(r) - 1] = (
                r[len(r) - 1 - db : len(r) - 1] - c * b[:-1]
            ) % p
        r = fp_trim(r[:-1])
    if len(r):
        raise ArithmeticError("inexact polynomial division mod p")
    return q


def good_primes(count, avoid=()):
    """Primes just below 2^31 whose residues keep the given ints nonzero."""
    out = []
    cand = 2**31 - 1
    while len(out) < count:
        if is_prime(cand) and all(int(x) % cand for x in avoid):
            out.append(cand)
        cand -= 2
    return out


# ---------------------------------------------------------------- Z[t] kernel

def zt_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def zt_max_bits(a):
    return max((int(c).bit_length() for c in a if c), default=0)


def _pack_signed(a, width):
    """Evaluate sum a_i * (2^(8*width))^i via two byte buffers (pos - neg)."""
    pos = bytearray(width * len(a))
    neg = bytearray(width * len(a))
    for i, c in enumerate(a):
        c = int(c)
        if c > 0:
            pos[width * i : width * i + (c.bit_length() + 7) // 8] = c.to_bytes(
                (c.bit_length() + 7) // 8, "little"
            )
        elif c < 0:
            c = -c
            neg[width * i : width * i + (c.bit_length() + 7) // 8] = c.to_bytes(
                (c.bit_length() + 7) // 8, "little"
            )
    return mpz(int.from_bytes(bytes(pos), "little")) - mpz(
        int.from_bytes(bytes(neg), "little")
    )


def _unpack_balanced(v, width, count):
    """Read `count` balanced base-2^(8*width) digits of v; None if v overflows.

    Adds 2^(B-1) to every lane so all balanced digits land in [0, 2^B) and can
    be sliced straight out of the byte string.
    """
    B = 8 * width
    half = 1 << (B - 1)
    offset_bytes = (b"\x00" * (width - 1) + b"\x80") * count
    shifted = int(v) + int.from_bytes(offset_bytes, "little")
    if shifted < 0 or shifted.bit_length() > B * count:
        return None
    raw = shifted.to_bytes(width * count, "little")
    out = []
    for i in range(count):
        out.append(int.from_bytes(raw[width * i : width * (i + 1)], "little") - half)
    return zt_trim(out)


def zt_mul(a, b):
    """Exact product in Z[t] by Kronecker substitution."""
    if not a or not b:
        return []
    bound = zt_max_bits(a) + zt_max_bits(b) + min(len(a), len(b)).bit_length() + 2
    width = (bound + 7) // 8
    v = _pack_signed(a, width) * _pack_signed(b, width)
    out = _unpack_balanced(v, width, len(a) + len(b) - 1)
    if out is None:
        raise ArithmeticError("Kronecker multiply bound failure")
    return out


def zt_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return zt_trim(out)


def zt_scale(a, c):
    if c == 0:
        return []
    return [x * c for x in a]


def zt_content(a):
    g = mpz(0)
    for c in a:
        g = zgcd(g, c)
        if g == 1:
            return mpz(1)
    return g


def zt_primitive(a):
    if not a:
        return a
    g = zt_content(a)
    if a[-1] < 0:
        g = -g
    if g != 1:
        a = [int(c // g) for c in a]
    return a


def zt_divexact(a, g, certify=True):
    """Exact quotient a / g in Z[t], or None when division is inexact.

    The quotient is reconstructed from one big-integer division and, when
    `certify` is set, proven by an exact re-multiplication. Retries with a
    wider lane cover quotients whose coefficients outgrow the first guess.
    """
    if not g:
        raise ZeroDivisionError("zt_divexact by zero polynomial")
    if not a:
        return []
    if len(a) < len(g):
        return None
    bound = zt_max_bits(a) + len(g).bit_length() + 4
    for _ in range(4):
        width = (bound + 7) // 8
        va, vg = _pack_signed(a, width), _pack_signed(g, width)
        if vg == 0:
            bound *= 2
            continue
        if va % vg:
            # an exact division in Z[t] divides at every integer point
            return None
        q = _unpack_balanced(va // vg, width, len(a) - len(g) + 1)
        if q is not None and (not certify or zt_mul(q, g) == list(a)):
            return q
        bound *= 2
    return None


_PRIMES = []


def _prime_cache():
    if not _PRIMES:
        _PRIMES.extend(good_primes(8))
    return _PRIMES


def zt_gcd3(a, b, c, primes=None):
    """Certified (gcd, a/g, b/g, c/g) over Z[t] for a nonzero triple.

    Degree of the gcd is bounded above by a modular image; a heuristic
    evaluation gcd proposes the polynomial, and exact divisions of all three
    inputs at that degree bound certify it. Content is split out first so
    the polynomial part stays primitive.
    """
    for poly in (a, b, c):
        if not poly:
            raise ValueError("zt_gcd3 expects nonzero polynomials")
    cont = zgcd(zgcd(zt_content(a), zt_content(b)), zt_content(c))
    if cont > 1:
        a = [int(x // cont) for x in a]
        b = [int(x // cont) for x in b]
        c = [int(x // cont) for x in c]
    if primes is None:
        primes = _prime_cache()
    last_error = "no primes tried"
    for p in primes:
        if a[-1] % p == 0 or b[-1] % p == 0 or c[-1] % p == 0:
            continue
        fa = np.array([int(x) % p for x in a], dtype=np.int64)
        fb = np.array([int(x) % p for x in b], dtype=np.int64)
        fc = np.array([int(x) % p for x in c], dtype=np.int64)
        gp = fp_gcd(fp_gcd(fa, fb, p), fc, p)
        dstar = len(gp) - 1
        if dstar == 0:
            return [1], a, b, c, cont
        bound = max(zt_max_bits(a), zt_max_bits(b), zt_max_bits(c)) + dstar + 8
        ok = None
        for _ in range(3):
            width = (bound + 7) // 8
            vals = [_pack_signed(x, width) for x in (a, b, c)]
            gamma = zgcd(zgcd(vals[0], vals[1]), vals[2])
            g = _unpack_balanced(gamma, width, dstar + 1)
            if g is not None and len(g) == dstar + 1:
                g = zt_primitive(g)
                qa = zt_divexact(a, g)
                qb = zt_divexact(b, g) if qa is not None else None
                qc = zt_divexact(c, g) if qb is not None else None
                if qc is not None:
                    ok = (g, qa, qb, qc, cont)
                    break
            bound *= 2
        if ok:
            return ok
        last_error = f"certification failed at p={p}"
    raise ArithmeticError(f"zt_gcd3 could not certify a gcd: {last_error}")
