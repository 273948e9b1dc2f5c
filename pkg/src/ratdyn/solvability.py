"""Closed-form solutions, precision policies, and reversibility checks.

The angle picture: orbits of the tan-type maps are tan(omega_n) where the
angles satisfy the linear recurrence omega_{n+1} = k omega_n - omega_{n-1},
so omega_n = u_n omega_1 - u_{n-1} omega_0 with integer u_n. Comparisons
against iterated orbits run in MPReal at a precision that outpaces both
the integer coefficient growth and the Lyapunov error amplification.

Angles from principal-branch arctan differ from the true angles by integer
multiples of pi. tan() is blind to that shift, so closed-form checks agree
in the circle metric mod pi, while the quadratic angle invariant is only
honest when true branches are tracked; see the branch tests.
"""

import math
from dataclasses import dataclass

from gmpy2 import mpq

from .arithmetic import MPReal, bigrat, mp_pi
from .errors import PrecisionExhausted, SingularHit
from .maps import MapId, PlaneState, get_map, step_backward, step_forward


@dataclass(frozen=True)
class PrecisionPolicy:
    """Working precision ceil(c * n) + 64 bits for an n-step computation."""

    c: float

    def bits(self, n):
        return math.ceil(self.c * n) + 64

    @classmethod
    def for_tan_multiplier(cls, k):
        """Slope covering both u_n growth and error amplification for tan(k)."""
        if k == 3:
            return cls(1.4)
        if k <= 2:
            return cls(0.0)
        lam = (k + math.sqrt(k * k - 4)) / 2
        return cls(math.ceil(100 * math.log2(lam)) / 100)


@dataclass
class LinearSolution:
    """Angle-space solution omega_n = u_n omega_1 - u_{n-1} omega_0."""

    k: int
    w0: MPReal
    w1: MPReal

    def coeffs(self, n):
        """Integer pair (u_n, u_{n-1}) with u_0 = 0, u_1 = 1."""
        if n < 0:
            raise ValueError("n must be nonnegative")
        prev, cur = -1, 0  # u_{-1}, u_0: forces u_1 = k u_0 - u_{-1} = 1
        for _ in range(n):
            prev, cur = cur, self.k * cur - prev
        return cur, prev

    def omega(self, n):
        un, um = self.coeffs(n)
        return self.w1 * un - self.w0 * um


@dataclass
class ClosedFormWitness:
    check: str
    map: str
    N: int
    tol: float
    max_dev: float
    bits: int
    passed: bool

    def to_dict(self):
        return {
            "check": self.check,
            "map": self.map,
            "N": self.N,
            "tol": self.tol,
            "max_dev": self.max_dev,
            "bits": self.bits,
            "pass": self.passed,
        }


def circle_distance(a, b):
    """Distance between two MPReal angles on the circle R / pi Z, as float."""
    pi = mp_pi(max(a.precision_bits, b.precision_bits))
    diff = a - b
    m = round(float(diff / pi))
    return abs(float(diff - pi * m))


def verify_closed_form_logistic(x0, N, tol=1e-20):
    """Check x_n = cos(2^n arccos x0) against the iterated quadratic map.

    Starts at N + 64 bits and doubles at most twice before raising
    PrecisionExhausted (with the last witness attached).
    """
    x0 = bigrat(x0) if not isinstance(x0, mpq) else x0
    if not -1 <= x0 <= 1:
        raise ValueError("closed form needs x0 in [-1, 1]")
    mapdef = get_map("logistic")
    bits = N + 64
    witness = None
    for _ in range(3):
        x = MPReal.from_rational(x0, bits)
        theta = x.acos()
        max_dev = 0.0
        cur = x
        for n in range(1, N + 1):
            cur = step_forward(mapdef, PlaneState(cur, cur)).v
            closed = (theta * (1 << n)).cos()
            max_dev = max(max_dev, abs(float(cur - closed)))
        witness = ClosedFormWitness("logistic_closed_form", "logistic", N,
                                    tol, max_dev, bits, max_dev <= tol)
        if witness.passed:
            return witness
        bits *= 2
    err = PrecisionExhausted(
        f"deviation {witness.max_dev} above {tol} after two doublings")
    err.witness = witness
    raise err


def verify_closed_form_tan(s0, k, N, tol=1e-15, policy=None):
    """Check the angle recurrence against the iterated tan-type map.

    Both sides run in MPReal: the orbit by stepping the map, the closed
    form through LinearSolution from principal-branch arctans of the first
    two states. Deviations are measured in the circle metric mod pi, which
    the unknown branch multiples of pi cannot touch.
    """
    u0, v0 = (bigrat(s0[0]), bigrat(s0[1]))
    mapdef = get_map(MapId("tan", k=k))
    if policy is None:
        policy = PrecisionPolicy.for_tan_multiplier(k)
    bits = policy.bits(N)
    witness = None
    for _ in range(3):
        state = PlaneState(MPReal.from_rational(u0, bits),
                           MPReal.from_rational(v0, bits))
        sol = LinearSolution(k, state.u.atan(), state.v.atan())
        max_dev = 0.0
        w_prev, w_cur = sol.w0, sol.w1
        for n in range(2, N + 1):
            state = step_forward(mapdef, state)
            w_prev, w_cur = w_cur, w_cur * k - w_prev
            max_dev = max(max_dev, circle_distance(state.v.atan(), w_cur))
        witness = ClosedFormWitness("tan_closed_form", f"tan:k={k}", N, tol,
                                    max_dev, bits, max_dev <= tol)
        if witness.passed:
            return witness
        bits *= 2
    err = PrecisionExhausted(
        f"deviation {witness.max_dev} above {tol} after two doublings")
    err.witness = witness
    raise err


def invariant_tan2(state):
    """(u - v)/(1 + uv): conserved exactly by the k=2 tan-type map."""
    u, v = state
    den = 1 + u * v
    if not den:
        raise SingularHit("1 + uv vanished", denominator="1 + u*v")
    return (u - v) / den


def conique_value(w0, w1, k):
    """Quadratic form w1^2 - k w1 w0 + w0^2, conserved by the angle recurrence."""
    return w1 * w1 - w1 * w0 * k + w0 * w0


@dataclass
class RoundtripReport:
    map: str
    N: int
    tol: float
    max_dev: float
    bits: int
    tested: int
    excluded: list
    passed: bool

    def to_dict(self):
        return {
            "map": self.map,
            "N": self.N,
            "tol": self.tol,
            "max_dev": self.max_dev,
            "bits": self.bits,
            "tested": self.tested,
            "excluded": list(self.excluded),
            "pass": self.passed,
        }


def _finite(state):
    return state.u.is_finite() and state.v.is_finite()


def roundtrip_test(map_id, points, N, tol=1e-3, bits=None):
    """Forward N then backward N in MPReal; how far from where we started?

    Points whose working orbit leaves the finite range or hits an exact
    zero denominator are excluded and reported by index. Precision doubles
    at most twice if the surviving deviation exceeds tol.
    """
    mapdef = map_id if hasattr(map_id, "forward_parts") else get_map(map_id)
    if bits is None:
        bits = math.ceil(1.4 * N) + 64
    report = None
    for _ in range(3):
        max_dev = 0.0
        excluded = []
        tested = 0
        for idx, (pu, pv) in enumerate(points):
            start = PlaneState(MPReal.from_rational(bigrat(pu), bits),
                               MPReal.from_rational(bigrat(pv), bits))
            state = start
            try:
                ok = True
                for _ in range(N):
                    state = step_forward(mapdef, state)
                    if not _finite(state):
                        ok = False
                        break
                if ok:
                    for _ in range(N):
                        state = step_backward(mapdef, state)
                        if not _finite(state):
                            ok = False
                            break
            except SingularHit:
                ok = False
            if not ok:
                excluded.append(idx)
                continue
            tested += 1
            dev = max(abs(float(state.u - start.u)),
                      abs(float(state.v - start.v)))
            max_dev = max(max_dev, dev)
        report = RoundtripReport(str(mapdef.map_id), N, tol, max_dev, bits,
                                 tested, excluded, max_dev <= tol)
        if report.passed:
            return report
        bits *= 2
    return report
