"""Exact and controlled-precision scalars plus univariate polynomials.

Everything downstream iterates maps over one of four scalar kinds: exact
rationals (BigRat), Gaussian rationals, prime-field residues, and
arbitrary-precision reals. Polynomials are dense univariate lists over any
of the exact kinds.
"""

import gmpy2
from gmpy2 import mpq, mpz

from .errors import DivisionByZero, ZeroHeight, ZeroInverse

# BigRat is gmpy2's rational: always normalized, denominator always positive,
# which is exactly the invariant the rest of the library relies on.
BigRat = mpq


def bigrat(num, den=1):
    """Exact rational from ints, strings like '3/7', or another rational."""
    if isinstance(num, str):
        return mpq(num)
    return mpq(num, den)


def height(q):
    """Bit-length height of a nonzero rational: max(bits(num), bits(den)).

    Kept exact-integer so slope fits downstream decide when to go float.
    """
    q = mpq(q)
    if q == 0:
        raise ZeroHeight("height(0) undefined")
    return max(abs(q.numerator).bit_length(), q.denominator.bit_length())


class GaussRat:
    """Gaussian rational a + b*i with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = mpq(re)
        self.im = mpq(im)

    @staticmethod
    def i():
        return GaussRat(0, 1)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    @staticmethod
    def _coerce(x):
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, (int, type(mpq(0)))):
            return GaussRat(x, 0)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussRat(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussRat(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self):
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise DivisionByZero("inverse of Gaussian zero")
        return GaussRat(self.re / n, -self.im / n)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussRat({self.re}, {self.im})"


class FpElem:
    """Residue in [0, p) for a prime p, with field arithmetic."""

    __slots__ = ("residue", "p")

    def __init__(self, residue, p):
        self.p = p
        self.residue = residue % p

    def _wrap(self, r):
        return FpElem(r, self.p)

    @staticmethod
    def _res(x):
        return x.residue if isinstance(x, FpElem) else x

    def __eq__(self, other):
        if isinstance(other, FpElem):
            return self.p == other.p and self.residue == other.residue
        if isinstance(other, int):
            return self.residue == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.residue, self.p))

    def __add__(self, other):
        return self._wrap(self.residue + self._res(other))

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(-self.residue)

    def __sub__(self, other):
        return self._wrap(self.residue - self._res(other))

    def __rsub__(self, other):
        return self._wrap(self._res(other) - self.residue)

    def __mul__(self, other):
        return self._wrap(self.residue * self._res(other))

    __rmul__ = __mul__

    def inverse(self):
        return fp_inverse(self)

    def __truediv__(self, other):
        if not isinstance(other, FpElem):
            other = FpElem(other, self.p)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._wrap(self._res(other)) * self.inverse()

    def __pow__(self, e):
        return self._wrap(pow(self.residue, e, self.p))

    def __bool__(self):
        return self.residue != 0

    def __repr__(self):
        return f"FpElem({self.residue} mod {self.p})"


def fp_inverse(a):
    """Multiplicative inverse mod the prime of a; rejects zero."""
    if a.residue == 0:
        raise ZeroInverse(f"0 has no inverse mod {a.p}")
    return FpElem(pow(a.residue, -1, a.p), a.p)


# ---------------------------------------------------------------------------
# arbitrary-precision reals

def _ctx(bits):
    return gmpy2.context(precision=bits)


class MPReal:
    """Arbitrary-precision binary float tagged with its working precision.

    A thin immutable wrapper over MPFR. Every operation runs in a context of
    the larger operand precision, so results are correctly rounded there
    (comfortably inside the advertised 4-ulp budget for the trig family).
    """

    __slots__ = ("value", "precision_bits")

    def __init__(self, value, bits=None):
        if isinstance(value, MPReal):
            bits = bits or value.precision_bits
            value = value.value
        if bits is None:
            bits = 64
        with _ctx(bits):
            self.value = gmpy2.mpfr(value)
        self.precision_bits = bits

    @staticmethod
    def from_rational(q, bits):
        with _ctx(bits):
            return MPReal(gmpy2.mpfr(mpq(q)), bits)

    def decompose(self):
        """(sign, mantissa, exponent, precision_bits) with value = mantissa * 2^exponent."""
        m, e = self.value.as_mantissa_exp()
        sign = -1 if m < 0 else (0 if m == 0 else 1)
        return sign, abs(m), int(e), self.precision_bits

    def _bits_with(self, other):
        if isinstance(other, MPReal):
            return max(self.precision_bits, other.precision_bits)
        return self.precision_bits

    @staticmethod
    def _raw(x):
        return x.value if isinstance(x, MPReal) else x

    def _binop(self, other, op):
        bits = self._bits_with(other)
        with _ctx(bits):
            return MPReal(op(self.value, self._raw(other)), bits)

    def __add__(self, other):
        return self._binop(other, gmpy2.add)

    def __radd__(self, other):
        return self._binop(other, lambda a, b: gmpy2.add(b, a))

    def __sub__(self, other):
        return self._binop(other, gmpy2.sub)

    def __rsub__(self, other):
        return self._binop(other, lambda a, b: gmpy2.sub(b, a))

    def __mul__(self, other):
        return self._binop(other, gmpy2.mul)

    def __rmul__(self, other):
        return self._binop(other, lambda a, b: gmpy2.mul(b, a))

    def __truediv__(self, other):
        return self._binop(other, gmpy2.div)

    def __rtruediv__(self, other):
        return self._binop(other, lambda a, b: gmpy2.div(b, a))

    def __neg__(self):
        return MPReal(-self.value, self.precision_bits)

    def __abs__(self):
        return MPReal(abs(self.value), self.precision_bits)

    def _cmp_raw(self, other):
        return self._raw(other)

    def __eq__(self, other):
        return self.value == self._cmp_raw(other)

    def __lt__(self, other):
        return self.value < self._cmp_raw(other)

    def __le__(self, other):
        return self.value <= self._cmp_raw(other)

    def __gt__(self, other):
        return self.value > self._cmp_raw(other)

    def __ge__(self, other):
        return self.value >= self._cmp_raw(other)

    def __float__(self):
        return float(self.value)

    def __repr__(self):
        return f"MPReal({self.value!r}, bits={self.precision_bits})"

    def is_finite(self):
        return gmpy2.is_finite(self.value)

    # one-argument MPFR functions, each evaluated at this value's precision
    def _fn(self, f):
        with _ctx(self.precision_bits):
            return MPReal(f(self.value), self.precision_bits)

    def tan(self):
        return self._fn(gmpy2.tan)

    def atan(self):
        return self._fn(gmpy2.atan)

    def cos(self):
        return self._fn(gmpy2.cos)

    def acos(self):
        return self._fn(gmpy2.acos)

    def sqrt(self):
        return self._fn(gmpy2.sqrt)

    def log(self):
        return self._fn(gmpy2.log)


def mp_pi(bits):
    with _ctx(bits):
        return MPReal(gmpy2.const_pi(), bits)


# ---------------------------------------------------------------------------
# dense univariate polynomials over an exact field

class UniPoly:
    """Dense univariate polynomial over any exact field scalar.

    Coefficients must support +, -, *, / and == among themselves and with
    the Python ints 0 and 1. The zero polynomial is the empty list.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = cs

    @property
    def degree(self):
        """Degree, with the zero polynomial at -1 by convention."""
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def leading(self):
        return self.coeffs[-1]

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPoly(out)

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return UniPoly([])
        a, b = self.coeffs, other.coeffs
        out = [None] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            for j, cb in enumerate(b):
                t = ca * cb
                out[i + j] = t if out[i + j] is None else out[i + j] + t
        return UniPoly(out)

    def scale(self, c):
        return UniPoly([a * c for a in self.coeffs])

    def divmod(self, other):
        """Quotient and remainder; the divisor must be nonzero."""
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly([]), UniPoly(rem)
        quo = [None] * (dq + 1)
        inv_lead = 1 / other.leading()
        for k in range(dq, -1, -1):
            if len(rem) - 1 < k + other.degree:
                quo[k] = 0 * inv_lead
                continue
            c = rem[k + other.degree] * inv_lead
            quo[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * b
            rem.pop()
        return UniPoly(quo), UniPoly(rem)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(1 / self.leading())

    def evaluate(self, x):
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        return acc if acc is not None else 0 * x

    def compose(self, other):
        """Substitute another polynomial for the variable."""
        acc = UniPoly([])
        for c in reversed(self.coeffs):
            acc = acc * other + UniPoly([c])
        return acc

    def __repr__(self):
        return f"UniPoly({self.coeffs})"


def unipoly_gcd(p, q):
    """Monic gcd by the Euclidean algorithm; gcd(0, 0) is 0."""
    a, b = p, q
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


class RatFunc:
    """Reduced rational function: num/den with gcd 1 and monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        g = unipoly_gcd(num, den)
        if not g.is_zero() and g.degree > 0:
            num = num // g
            den = den // g
        if not den.is_zero():
            lead = den.leading()
            num = num.scale(1 / lead)
            den = den.scale(1 / lead)
        self.num = num
        self.den = den

    @property
    def degree(self):
        """Degree as a map: max of numerator and denominator degrees."""
        return max(self.num.degree, self.den.degree)

    def evaluate(self, x):
        d = self.den.evaluate(x)
        if not d:
            raise DivisionByZero("pole of rational function")
        return self.num.evaluate(x) / d

    def __eq__(self, other):
        return (
            isinstance(other, RatFunc)
            and self.num == other.num
            and self.den == other.den
        )

    def __repr__(self):
        return f"RatFunc({self.num!r}, {self.den!r})"
