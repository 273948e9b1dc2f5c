"""Four-variable birational maps from elliptic curve point multiplication.

States carry two points (x_{n-1}, y_{n-1}), (x_n, y_n) on a common curve
y^2 = 4x^3 - g2 x - g3. One step replaces the pair with (P_n, k*P_n - P_{n-1})
computed by chord constructions, so g2 and g3 are conserved exactly and the
lattice coordinate of P_n obeys c_{n+1} = k c_n - c_{n-1}.

All formulas are plain field arithmetic and work over exact rationals,
prime fields, or MPReal alike.
"""

import random
import warnings
from dataclasses import dataclass

from gmpy2 import mpq

from .arithmetic import height
from .errors import (AdditionDegenerate, CoincidentAbscissae,
                     DegenerateDenominator, TwoTorsion, ZeroHeight)


@dataclass(frozen=True)
class CurveParams:
    g2: object
    g3: object

    def __post_init__(self):
        if not self.discriminant():
            warnings.warn("curve parameters give a singular cubic",
                          stacklevel=3)

    def discriminant(self):
        return self.g2 ** 3 - 27 * self.g3 ** 2


@dataclass(frozen=True)
class ECPoint:
    x: object
    y: object


@dataclass(frozen=True)
class EllState:
    """(P_{n-1}, P_n) as a flat, iterable 4-tuple of coordinates."""

    prev: ECPoint
    cur: ECPoint

    def coords(self):
        return (self.prev.x, self.prev.y, self.cur.x, self.cur.y)

    def __iter__(self):
        return iter(self.coords())


def ell_state(x0, y0, x1, y1):
    return EllState(ECPoint(mpq(x0), mpq(y0)), ECPoint(mpq(x1), mpq(y1)))


def on_curve(pt, curve):
    return pt.y * pt.y == 4 * pt.x ** 3 - curve.g2 * pt.x - curve.g3


def curve_from_state(state):
    """Recover (g2, g3) from the two distinct-abscissa points of a state."""
    x0, y0, x1, y1 = state.coords()
    dx = x1 - x0
    if not dx:
        raise CoincidentAbscissae("state points share an x-coordinate")
    g2 = (y0 * y0 - y1 * y1) / dx + 4 * (x0 * x0 + x0 * x1 + x1 * x1)
    g3 = (x0 * y1 * y1 - x1 * y0 * y0) / dx - 4 * x0 * x1 * (x0 + x1)
    return CurveParams(g2, g3)


def wp_double(pt, g2):
    """Point doubling: analytic duplication of the elliptic argument."""
    x, y = pt.x, pt.y
    if not y:
        raise TwoTorsion("doubling a two-torsion point leaves the chart")
    z = 6 * x * x - g2 / 2
    f2 = -2 * x + z * z / (4 * y * y)
    h2 = -y + 3 * x * z / y - z ** 3 / (4 * y ** 3)
    return ECPoint(f2, h2)


def wp_triple(pt, g2):
    """Point tripling. The published form of the abscissa carries a sign
    error; the chord-tangent group law fixes the first sign as minus."""
    x, y = pt.x, pt.y
    z = 6 * x * x - g2 / 2
    w = 12 * x * y * y - z * z
    if not w:
        raise DegenerateDenominator(
            "tripling denominator vanished (three-torsion point)")
    y2 = y * y
    a = 12 * x * y2 * z - 4 * y2 * y2 - z ** 3
    b = 12 * x * y2 * z - 8 * y2 * y2 - z ** 3
    f3 = x - 4 * y2 * a / (w * w)
    h3 = -y - 4 * y * b * a / w ** 3
    return ECPoint(f3, h3)


def wp_mult(k, pt, g2):
    if k == 2:
        return wp_double(pt, g2)
    if k == 3:
        return wp_triple(pt, g2)
    raise ValueError("point multiplication implemented for k = 2 and 3")


def _chord_minus(a, b):
    """a - b on the curve through both, by the chord through a and -b."""
    if a.x == b.x:
        raise AdditionDegenerate("chord is vertical: result leaves the chart")
    s = (a.y + b.y) / (a.x - b.x)
    x2 = s * s / 4 - a.x - b.x
    y2 = (x2 * (a.y + b.y) - (a.x * b.y + a.y * b.x)) / (b.x - a.x)
    return ECPoint(x2, y2)


def ell_step(state, k, curve=None):
    """(P_{n-1}, P_n) -> (P_n, k P_n - P_{n-1}).

    Pass the curve for orbits that may visit coincident-abscissa states;
    recovering it from the state needs distinct x-coordinates.
    """
    if curve is None:
        curve = curve_from_state(state)
    fk = wp_mult(k, state.cur, curve.g2)
    if fk.x == state.prev.x:
        raise AdditionDegenerate(
            "k P_n and P_{n-1} share an abscissa: next point leaves the chart")
    return EllState(state.cur, _chord_minus(fk, state.prev))


def ell_backward(state, k, curve=None):
    """(P_n, P_{n+1}) -> (P_{n-1}, P_n) with P_{n-1} = k P_n - P_{n+1}."""
    if curve is None:
        curve = curve_from_state(state)
    fk = wp_mult(k, state.prev, curve.g2)
    if fk.x == state.cur.x:
        raise AdditionDegenerate(
            "k P_n and P_{n+1} share an abscissa: previous point leaves the chart")
    return EllState(_chord_minus(fk, state.cur), state.prev)


def iterate_ell(state, k, n, curve=None):
    """States s_1 .. s_{1+n} from n forward steps, curve resolved once."""
    if curve is None:
        curve = curve_from_state(state)
    out = [state]
    for _ in range(n):
        state = ell_step(state, k, curve)
        out.append(state)
    return out


def invariant_C(state):
    """Chord invariant: 4 times the abscissa of P_n - P_{n-1}.

    Exactly conserved when k = 2 (the difference of consecutive points is
    constant) and generically drifting for k >= 3.
    """
    x0, y0, x1, y1 = state.coords()
    dx = x1 - x0
    if not dx:
        raise CoincidentAbscissae("invariant needs distinct x-coordinates")
    s = (y0 + y1) / dx
    return s * s - 4 * (x0 + x1)


def state_height(state):
    """Max coordinate height in bits; zero coordinates count as one bit."""
    best = 1
    for c in state.coords():
        try:
            best = max(best, height(c))
        except ZeroHeight:
            pass
    return best


def ell_height_entropy(state, k, N, curve=None):
    """Height-growth slope along an exact orbit, with the height list.

    The slope of log(bit height) over the tail estimates the entropy of
    the map; see degree_growth.entropy_from_heights for the fit.
    """
    from .degree_growth import entropy_from_heights

    states = iterate_ell(state, k, N, curve=curve)
    heights = [state_height(s) for s in states]
    return entropy_from_heights(heights), heights


def random_ell_state(seed, bound=10):
    """Seeded random 4-coordinate state plus the curve through it.

    Any two points with distinct abscissae determine (g2, g3) linearly, so
    random coordinates always land on a valid (possibly singular) curve;
    singular draws are rejected and retried.
    """
    rng = random.Random(seed)

    def rat():
        return mpq(rng.randint(-bound, bound), rng.randint(1, bound))

    while True:
        x0, y0, x1, y1 = rat(), rat(), rat(), rat()
        if x0 == x1:
            continue
        state = ell_state(x0, y0, x1, y1)
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            try:
                curve = curve_from_state(state)
            except Warning:
                continue
        return state, curve


# A 12-torsion configuration: Q has exact order 12 on this rank-zero curve,
# so k = 3 lattice coordinates cycle mod 12 through residues that dodge the
# two-torsion, three-torsion, and vertical-chord degeneracies. Exact k = 3
# orbits from here run indefinitely with bounded coordinate heights.
TORSION12_CURVE = CurveParams(mpq(649, 108), mpq(-54107, 5832))
TORSION12_STATE = ell_state(mpq(-37, 36), mpq(-10, 3), mpq(83, 36), mpq(20, 3))
