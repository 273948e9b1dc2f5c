"""Degree growth of plane maps along a generic line, and entropy estimates.

The n-th degree is read off a projective triple (X : Y : W) of univariate
polynomials in the line parameter t. One step substitutes the triple into
the homogenized map and divides out the common factor, which is what makes
the sequence the true degree of the n-th iterate rather than the naive
D^n growth. Entropy comes from an exactly fitted linear recurrence on the
degrees when one is certified, and from a flagged one-term ratio otherwise.
"""

import json
import math
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional

import mpmath
import numpy as np

from . import _polyfast as pf
from .errors import Inconsistent, InsufficientData, LineDegenerate
from .maps import PlaneMapDef, get_map, parse_map_id

FP_PRIMES = (2147483647, 2147483629)


@dataclass(frozen=True)
class GenericLine:
    """Affine line t -> (a1 + b1 t, a2 + b2 t) with small integer coords."""

    a1: int
    a2: int
    b1: int
    b2: int

    @classmethod
    def random(cls, seed):
        rng = random.Random(seed)
        while True:
            a1, a2, b1, b2 = (rng.randint(-100, 100) for _ in range(4))
            if b1 != 0 and b2 != 0 and (a1, a2) != (0, 0):
                return cls(a1, a2, b1, b2)


@dataclass
class DegreeSequence:
    map: str
    field: str
    degrees: list
    line: GenericLine
    prime: Optional[int] = None


def _homog_monomials(mapdef):
    """[(c, i, j, k)] with k the W-exponent filling each monomial to degree D."""
    D = mapdef.degree
    out_n, out_m = [], []
    for target, src in ((out_n, mapdef.numer), (out_m, mapdef.denom)):
        for (i, j), c in src.items():
            k = D - i - j
            if k < 0:
                raise ValueError("monomial above homogenization degree")
            target.append((int(c), i, j, k))
    return out_n, out_m, D


def _fp_run(monos_n, monos_m, D, N, line, p):
    X = pf.fp_trim(np.array([line.a1 % p, line.b1 % p], dtype=np.int64))
    Y = pf.fp_trim(np.array([line.a2 % p, line.b2 % p], dtype=np.int64))
    W = np.array([1], dtype=np.int64)
    degs = [max(len(X), len(Y), len(W)) - 1]
    for _ in range(N):
        def powers(base, kmax):
            out = [np.array([1], dtype=np.int64), base]
            for _ in range(kmax - 1):
                out.append(pf.fp_mul(out[-1], base, p))
            return out

        Xp, Yp, Wp = powers(X, D), powers(Y, D), powers(W, D)

        def ev(monos):
            acc = np.zeros(0, dtype=np.int64)
            for c, i, j, k in monos:
                term = pf.fp_mul(pf.fp_mul(Xp[i], Yp[j], p), Wp[k], p) * (c % p) % p
                la, lb = len(acc), len(term)
                if la < lb:
                    acc = np.concatenate([acc, np.zeros(lb - la, dtype=np.int64)])
                elif lb < la:
                    term = np.concatenate([term, np.zeros(la - lb, dtype=np.int64)])
                acc = (acc + term) % p
            return pf.fp_trim(acc)

        X2, Y2, W2 = pf.fp_mul(Y, ev(monos_m), p), pf.fp_mul(W, ev(monos_n), p), \
            pf.fp_mul(W, ev(monos_m), p)
        if not (len(X2) and len(Y2) and len(W2)):
            raise LineDegenerate("triple component vanished")
        small = sorted([X2, Y2, W2], key=len)
        g = pf.fp_gcd(small[0], small[1], p)
        if len(g) > 1:
            g = pf.fp_gcd(g, small[2], p)
        if len(g) > 1:
            X2 = pf.fp_divexact(X2, g, p)
            Y2 = pf.fp_divexact(Y2, g, p)
            W2 = pf.fp_divexact(W2, g, p)
        X, Y, W = X2, Y2, W2
        d = max(len(X), len(Y), len(W)) - 1
        if d == 0:
            raise LineDegenerate("degree collapsed to zero")
        degs.append(d)
    return degs


def _q_run(monos_n, monos_m, D, N, line):
    X = pf.zt_trim([line.a1, line.b1])
    Y = pf.zt_trim([line.a2, line.b2])
    W = [1]
    degs = [max(len(X), len(Y), len(W)) - 1]
    for _ in range(N):
        def powers(base, kmax):
            out = [[1], list(base)]
            for _ in range(kmax - 1):
                out.append(pf.zt_mul(out[-1], base))
            return out

        Xp, Yp, Wp = powers(X, D), powers(Y, D), powers(W, D)

        def ev(monos):
            acc = []
            for c, i, j, k in monos:
                term = pf.zt_scale(pf.zt_mul(pf.zt_mul(Xp[i], Yp[j]), Wp[k]), c)
                acc = pf.zt_add(acc, term)
            return acc

        Nh, Mh = ev(monos_n), ev(monos_m)
        X2, Y2, W2 = pf.zt_mul(Y, Mh), pf.zt_mul(W, Nh), pf.zt_mul(W, Mh)
        if not (X2 and Y2 and W2):
            raise LineDegenerate("triple component vanished")
        g, X2, Y2, W2, _cont = pf.zt_gcd3(X2, Y2, W2)
        X, Y, W = X2, Y2, W2
        d = max(len(X), len(Y), len(W)) - 1
        if d == 0:
            raise LineDegenerate("degree collapsed to zero")
        degs.append(d)
    return degs


def degree_sequence(map_id, N, field="Fp", p=None, line=None, seed=0):
    """Exact degrees d_0..d_N of the iterated map on a generic line.

    field="Fp" runs modulo a large prime (fast, correct for generic primes),
    field="Q" runs over the rationals (slower, unconditionally exact). A
    degenerate line is retried with fresh seeded coordinates a few times.
    """
    mapdef = map_id if isinstance(map_id, PlaneMapDef) else get_map(map_id)
    if mapdef.gauss_only:
        raise ValueError("degree_sequence needs rational coefficients")
    monos_n, monos_m, D = _homog_monomials(mapdef)
    if field == "Fp":
        p = p or FP_PRIMES[0]
    elif field == "Q":
        p = None
    else:
        raise ValueError("field must be 'Fp' or 'Q'")
    last = None
    for attempt in range(5):
        ln = line or GenericLine.random(seed + 1000 * attempt)
        try:
            if field == "Fp":
                degs = _fp_run(monos_n, monos_m, D, N, ln, p)
            else:
                degs = _q_run(monos_n, monos_m, D, N, ln)
            tag = f"Fp({p})" if p else "Q"
            return DegreeSequence(str(mapdef.map_id), tag, degs, ln, p)
        except LineDegenerate as e:
            last = e
            if line is not None:
                raise
    raise last


@dataclass
class RecurrenceFit:
    coeffs: list  # Fractions c1..cr: d_n = sum c_j d_{n-j}
    transient: int
    verified_terms: int

    @property
    def order(self):
        return len(self.coeffs)

    def char_poly(self):
        """Monic characteristic polynomial, descending coefficients."""
        return [Fraction(1)] + [-c for c in self.coeffs]


def fit_recurrence(degrees, max_order=8, max_transient=6):
    """Smallest exact linear recurrence on a degree sequence, or None.

    Scans orders r and transients tau in lexicographic order, solves the
    first r shift equations exactly, and accepts only if every remaining
    term checks out, with at least two such checks. None means no verified
    recurrence fits within the search window.
    """
    N = len(degrees) - 1
    if N < 3:
        raise InsufficientData("need at least 4 degree terms")
    for r in range(1, max_order + 1):
        for tau in range(0, max_transient + 1):
            if tau + 2 * r + 1 > N:
                continue
            sol = _solve_hankel(degrees, r, tau)
            if sol is None:
                continue
            ok = True
            checks = 0
            for n in range(tau + 2 * r, N + 1):
                pred = sum(sol[j] * degrees[n - 1 - j] for j in range(r))
                if pred != degrees[n]:
                    ok = False
                    break
                checks += 1
            if ok and checks >= 2:
                return RecurrenceFit(sol, tau, checks)
    return None


def _solve_hankel(degrees, r, tau):
    """Exact solve of the r equations d_n = sum c_j d_{n-j}, n = tau+r..tau+2r-1."""
    rows = []
    rhs = []
    for n in range(tau + r, tau + 2 * r):
        rows.append([Fraction(degrees[n - 1 - j]) for j in range(r)])
        rhs.append(Fraction(degrees[n]))
    # Gaussian elimination with partial pivoting over Q
    m = [row + [b] for row, b in zip(rows, rhs)]
    for col in range(r):
        piv = next((i for i in range(col, r) if m[i][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        inv = m[col][col]
        m[col] = [x / inv for x in m[col]]
        for i in range(r):
            if i != col and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    return [m[i][r] for i in range(r)]


def dominant_root(char_coeffs, dps=60):
    """Largest root magnitude of a monic polynomial, as an mpmath float.

    The squarefree part is split off exactly first; repeated roots (the
    polynomial-growth case) otherwise stall the numeric root finder.
    """
    from gmpy2 import mpq

    from .arithmetic import UniPoly, unipoly_gcd

    asc = [mpq(c.numerator, c.denominator) if isinstance(c, Fraction)
           else mpq(c) for c in reversed(char_coeffs)]
    f = UniPoly(asc)
    fprime = UniPoly([asc[i] * i for i in range(1, len(asc))])
    g = unipoly_gcd(f, fprime)
    if g.degree > 0:
        f = f // g
    with mpmath.workdps(dps):
        coeffs = [mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator)
                  for c in reversed(f.coeffs)]
        roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=200)
        return max(abs(root) for root in roots)


@dataclass
class EntropyReport:
    map: str
    field: str
    degrees: list
    recurrence: Optional[RecurrenceFit]
    entropy: float
    fallback: bool
    lines: list = dc_field(default_factory=list)
    primes: list = dc_field(default_factory=list)

    def char_poly(self):
        return self.recurrence.char_poly() if self.recurrence else None

    def to_dict(self):
        def frac(c):
            return int(c) if c.denominator == 1 else str(c)

        rec = None
        cp = None
        if self.recurrence:
            rec = {
                "coeffs": [frac(c) for c in self.recurrence.coeffs],
                "transient": self.recurrence.transient,
            }
            cp = [frac(c) for c in self.recurrence.char_poly()]
        return {
            "map": self.map,
            "field": self.field,
            "degrees": list(self.degrees),
            "recurrence": rec,
            "char_poly": cp,
            "entropy": self.entropy,
            "fallback": self.fallback,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


_DEFAULT_N = {"power": 6, "logistic": 6, "ritt_real": 6}


def _default_iters(mapdef):
    name = mapdef.map_id.name
    if name in _DEFAULT_N:
        return _DEFAULT_N[name]
    if name == "tan" and mapdef.map_id.k <= 2:
        return 12
    if name == "mcm":
        return 12
    return 10  # tan k>=3, hv: degrees near 10^5 by then


def entropy(map_id, N=None, seed=0):
    """Algebraic entropy of a catalog map from exact degree growth.

    Runs the degree sequence on two generic lines at each of two primes;
    any disagreement is arbitrated by an exact rational run (truth, but
    only feasible for short prefixes). The entropy is log of the dominant
    characteristic root when a recurrence is certified, else the flagged
    one-term ratio log(d_N / d_{N-1}).
    """
    mapdef = map_id if isinstance(map_id, PlaneMapDef) else get_map(map_id)
    if N is None:
        N = _default_iters(mapdef)
    runs = []
    for li, line_seed in enumerate((seed, seed + 1)):
        ln = GenericLine.random(line_seed)
        for p in FP_PRIMES:
            runs.append(degree_sequence(mapdef, N, field="Fp", p=p, line=ln))
    sequences = {tuple(r.degrees) for r in runs}
    if len(sequences) == 1:
        degrees = runs[0].degrees
    else:
        arb = degree_sequence(mapdef, min(N, 8), field="Q",
                              line=runs[0].line)
        matches = [r for r in runs
                   if r.degrees[: len(arb.degrees)] == arb.degrees]
        if not matches:
            raise Inconsistent(
                f"no modular run matches the exact arbiter for {mapdef.map_id}")
        degrees = max((r.degrees for r in matches), key=len)
    fit = fit_recurrence(degrees)
    if fit is not None:
        lam = dominant_root(fit.char_poly())
        val = 0.0 if lam <= 1 + mpmath.mpf(10) ** -30 else float(mpmath.log(lam))
        return EntropyReport(str(mapdef.map_id), runs[0].field, degrees, fit,
                             val, False,
                             lines=[r.line for r in runs],
                             primes=sorted({r.prime for r in runs}))
    val = math.log(degrees[-1] / degrees[-2])
    return EntropyReport(str(mapdef.map_id), runs[0].field, degrees, None,
                         val, True,
                         lines=[r.line for r in runs],
                         primes=sorted({r.prime for r in runs}))


def entropy_from_heights(heights, tail_start=None):
    """Least-squares slope of log(height) against n over the orbit tail.

    Heights are bit lengths, already one logarithm up from the rational
    values, so the slope of their logs estimates log of the growth rate.
    Zero heights (the exact rational 0) are skipped.
    """
    N = len(heights) - 1
    if tail_start is None:
        tail_start = (N + 1) // 2
    pts = [(n, math.log(h)) for n, h in enumerate(heights)
           if n >= tail_start and h > 0]
    if len(pts) < 2:
        raise InsufficientData("need two positive heights in the tail")
    xs = [x for x, _ in pts]
    ys = [y for _, y in pts]
    xbar = sum(xs) / len(xs)
    ybar = sum(ys) / len(ys)
    num = sum((x - xbar) * (y - ybar) for x, y in pts)
    den = sum((x - xbar) ** 2 for x in xs)
    return num / den
