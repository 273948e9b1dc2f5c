"""Catalog of second-order rational recurrences as plane maps.

Each map steps a state (u, v) = (x_{n-1}, x_n) to (v, x_{n+1}) where
x_{n+1} is a rational expression in (u, v). One-dimensional maps ride the
same interface with u ignored. All stepping is field-generic: exact
rationals, Gaussian rationals, prime-field residues, or MPReal.
"""

from dataclasses import dataclass
from typing import Optional

from gmpy2 import mpq

from .arithmetic import FpElem, GaussRat, MPReal, RatFunc, UniPoly, unipoly_gcd
from .errors import NotInvertible, SingularHit

ONE_DIMENSIONAL = ("logistic", "ritt_real", "ritt_gauss")


@dataclass(frozen=True)
class MapId:
    """Catalog identity plus parameters, printable as the CLI string."""

    name: str
    k: Optional[int] = None
    a: Optional[object] = None  # exact rational parameter for hv / mcm

    def __str__(self):
        if self.name == "tan":
            return f"tan:k={self.k}"
        if self.name == "power":
            return f"power:k={self.k}"
        if self.name == "elliptic":
            return f"ell:k={self.k}"
        if self.name == "hv":
            return f"hv:a={self.a}"
        if self.name == "mcm":
            return f"mcm:a={self.a}"
        if self.name == "ritt_real":
            return "ritt4"
        if self.name == "ritt_gauss":
            return "ritt3i"
        return self.name


def parse_map_id(text):
    """Parse CLI map strings like tan:k=3, hv:a=1, mcm:a=5/2, ell:k=2."""
    text = text.strip()
    if text == "logistic":
        return MapId("logistic")
    if text == "ritt4":
        return MapId("ritt_real")
    if text == "ritt3i":
        return MapId("ritt_gauss")
    if ":" in text:
        head, _, arg = text.partition(":")
        key, _, val = arg.partition("=")
        if head == "tan" and key == "k":
            k = int(val)
            if k < 1:
                raise ValueError("tan needs k >= 1")
            return MapId("tan", k=k)
        if head == "power" and key == "k":
            k = int(val)
            if k < 1:
                raise ValueError("power needs k >= 1")
            return MapId("power", k=k)
        if head == "ell" and key == "k":
            k = int(val)
            if k not in (2, 3):
                raise ValueError("ell supports k=2 and k=3")
            return MapId("elliptic", k=k)
        if head == "hv" and key == "a":
            a = mpq(val)
            if a == 0:
                raise ValueError("hv needs a != 0")
            return MapId("hv", a=a)
        if head == "mcm" and key == "a":
            a = mpq(val)
            if a == 0:
                raise ValueError("mcm needs a != 0")
            return MapId("mcm", a=a)
    # bare names with defaults
    if text == "hv":
        return MapId("hv", a=mpq(1))
    if text == "mcm":
        return MapId("mcm", a=mpq(2))
    raise ValueError(f"unknown map spec: {text!r}")


@dataclass(frozen=True)
class PlaneState:
    u: object
    v: object

    @property
    def field_tag(self):
        t = self.v
        if isinstance(t, FpElem):
            return f"Fp({t.p})"
        if isinstance(t, MPReal):
            return f"mpreal({t.precision_bits})"
        if isinstance(t, GaussRat):
            return "Q(i)"
        return "Q"

    def __iter__(self):
        return iter((self.u, self.v))


def coerce_scalar(value, like):
    """Bring an exact rational constant into the field of `like`."""
    q = mpq(value)
    if isinstance(like, FpElem):
        num = FpElem(int(q.numerator), like.p)
        den = FpElem(int(q.denominator), like.p)
        return num / den
    if isinstance(like, MPReal):
        return MPReal.from_rational(q, like.precision_bits)
    if isinstance(like, GaussRat):
        return GaussRat(q, 0)
    return q


def _tan_fg(k):
    """Integer coefficient lists (F, G) with tan(k*t) = F(x)/G(x), x = tan t.

    Built from the one-step addition rule: F_k = F_{k-1} + x G_{k-1},
    G_k = G_{k-1} - x F_{k-1}. Coefficients stay integers throughout.
    """
    F, G = [0, 1], [1]
    for _ in range(k - 1):
        nF = [0] * (len(G) + 1)
        for i, c in enumerate(F):
            nF[i] += c
        for i, c in enumerate(G):
            nF[i + 1] += c
        nG = [0] * (len(F) + 1)
        for i, c in enumerate(G):
            nG[i] += c
        for i, c in enumerate(F):
            nG[i + 1] -= c
        while nF and nF[-1] == 0:
            nF.pop()
        while nG and nG[-1] == 0:
            nG.pop()
        F, G = nF, nG
    return F, G


def build_tan_multiple(k):
    """tan(k * arctan x) as a reduced rational function of x."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    F, G = _tan_fg(k)
    return RatFunc(UniPoly([mpq(c) for c in F]), UniPoly([mpq(c) for c in G]))


def _poly_eval_int(coeffs, x):
    """Evaluate an integer coefficient list at a field scalar."""
    acc = None
    for c in reversed(coeffs):
        if acc is None:
            acc = 0 * x + c
        else:
            acc = acc * x + c
    return acc if acc is not None else 0 * x


@dataclass(frozen=True)
class PlaneMapDef:
    """A catalog map: forward/backward steps plus its cleared polynomial data.

    numer/denom describe x_{n+1} = N(u, v)/M(u, v) with integer coefficients
    as {(i, j): c} for c * u^i * v^j; degree is their common homogenization
    degree. One-dimensional maps carry no backward step.
    """

    map_id: MapId
    numer: dict
    denom: dict
    degree: int
    one_dim: bool = False
    gauss_only: bool = False
    singular_label: str = "denominator"

    def _eval_poly(self, mono, u, v):
        acc = None
        for (i, j), c in mono.items():
            term = 0 * v + c
            for _ in range(i):
                term = term * u
            for _ in range(j):
                term = term * v
            acc = term if acc is None else acc + term
        return acc if acc is not None else 0 * v

    def forward_parts(self, u, v):
        return self._eval_poly(self.numer, u, v), self._eval_poly(self.denom, u, v)

    def backward_parts(self, u, v):
        """x_{n-1} from (x_n, x_{n+1}) = (u, v): same relation, ends swapped."""
        if self.one_dim:
            raise NotInvertible(f"{self.map_id} is not invertible")
        return self._eval_poly(self.numer, v, u), self._eval_poly(self.denom, v, u)

    def compile_modp(self, p):
        """Fast int step function mod p: (u, v) -> (u2, v2) or None if singular."""
        nm = [(c % p, i, j) for (i, j), c in self.numer.items()]
        dm = [(c % p, i, j) for (i, j), c in self.denom.items()]

        def step(u, v):
            den = 0
            for c, i, j in dm:
                den += c * pow(u, i, p) * pow(v, j, p)
            den %= p
            if den == 0:
                return None
            num = 0
            for c, i, j in nm:
                num += c * pow(u, i, p) * pow(v, j, p)
            return v, num % p * pow(den, -1, p) % p

        return step


_MAP_BUILDERS = {}


def _register(name):
    def deco(fn):
        _MAP_BUILDERS[name] = fn
        return fn

    return deco


@_register("logistic")
def _build_logistic(mid):
    return PlaneMapDef(
        mid,
        numer={(0, 2): 2, (0, 0): -1},
        denom={(0, 0): 1},
        degree=2,
        one_dim=True,
    )


@_register("ritt_real")
def _build_ritt_real(mid):
    # x' = -(x-1)^2 / (4x)
    return PlaneMapDef(
        mid,
        numer={(0, 2): -1, (0, 1): 2, (0, 0): -1},
        denom={(0, 1): 4},
        degree=2,
        one_dim=True,
        singular_label="4*x",
    )


@_register("ritt_gauss")
def _build_ritt_gauss(mid):
    # x' = (x - 1/x) / (2i) = -i (x^2 - 1) / (2x); coefficients leave Q,
    # so this map is stepped through a dedicated path over Gaussian rationals.
    return PlaneMapDef(
        mid,
        numer={},
        denom={(0, 1): 2},
        degree=2,
        one_dim=True,
        gauss_only=True,
        singular_label="2*x",
    )


@_register("power")
def _build_power(mid):
    return PlaneMapDef(
        mid,
        numer={(0, mid.k): 1},
        denom={(1, 0): 1},
        degree=mid.k,
        singular_label="x_{n-1}",
    )


@_register("tan")
def _build_tan(mid):
    F, G = _tan_fg(mid.k)
    numer = {}
    denom = {}
    for j, c in enumerate(F):
        if c:
            numer[(0, j)] = c
            denom[(1, j)] = c
    for j, c in enumerate(G):
        if c:
            numer[(1, j)] = numer.get((1, j), 0) - c
            denom[(0, j)] = denom.get((0, j), 0) + c
    deg = max(i + j for i, j in list(numer) + list(denom))
    return PlaneMapDef(
        mid,
        numer=numer,
        denom=denom,
        degree=deg,
        singular_label="G(x_n) + x_{n-1} F(x_n)",
    )


@_register("hv")
def _build_hv(mid):
    a = mpq(mid.a)
    q, p = int(a.denominator), int(a.numerator)
    return PlaneMapDef(
        mid,
        numer={(0, 3): q, (0, 0): p, (1, 2): -q},
        denom={(0, 2): q},
        degree=3,
        singular_label="x_n^2",
    )


@_register("mcm")
def _build_mcm(mid):
    a = mpq(mid.a)
    q, p = int(a.denominator), int(a.numerator)
    return PlaneMapDef(
        mid,
        numer={(0, 1): 2 * p, (1, 2): -q, (1, 0): q},
        denom={(0, 2): q, (0, 0): -q},
        degree=3,
        singular_label="x_n^2 - 1",
    )


def get_map(map_id):
    if isinstance(map_id, str):
        map_id = parse_map_id(map_id)
    if map_id.name == "elliptic":
        raise ValueError("elliptic maps live in ratdyn.elliptic, not the plane catalog")
    try:
        builder = _MAP_BUILDERS[map_id.name]
    except KeyError:
        raise ValueError(f"unknown map {map_id.name}") from None
    return builder(map_id)


def _gauss_step(v):
    """Forward step of the Gaussian-coefficient degree-2 map."""
    if not isinstance(v, GaussRat):
        v = GaussRat(mpq(v), 0)
    if not v:
        raise SingularHit("2*x vanished", denominator="2*x")
    minus_i = GaussRat(0, -1)
    return minus_i * (v * v - 1) / (2 * v)


def step_forward(mapdef, state):
    """One forward step; raises SingularHit on a vanishing denominator."""
    u, v = state.u, state.v
    if mapdef.map_id.name == "ritt_gauss":
        if not v:
            raise SingularHit(
                f"{mapdef.singular_label} vanished at state ({u}, {v})",
                denominator=mapdef.singular_label,
            )
        return PlaneState(v, _gauss_step(v))
    num, den = mapdef.forward_parts(u, v)
    if not den:
        raise SingularHit(
            f"{mapdef.singular_label} vanished at state ({u}, {v})",
            denominator=mapdef.singular_label,
        )
    return PlaneState(v, num / den)


def step_backward(mapdef, state):
    """Inverse step: from (x_n, x_{n+1}) recover (x_{n-1}, x_n)."""
    u, v = state.u, state.v
    num, den = mapdef.backward_parts(u, v)
    if not den:
        raise SingularHit(
            f"{mapdef.singular_label} vanished stepping backward from ({u}, {v})",
            denominator=mapdef.singular_label,
        )
    return PlaneState(num / den, u)


@dataclass
class OrbitResult:
    states: list
    singular: Optional[SingularHit] = None

    @property
    def completed(self):
        return self.singular is None


def iterate_orbit(mapdef, s0, n, record="all"):
    """Iterate forward n steps, truncating (not raising) at a singularity."""
    if record not in ("all", "last"):
        raise ValueError("record must be 'all' or 'last'")
    states = [s0]
    s = s0
    hit = None
    for step in range(1, n + 1):
        try:
            s = step_forward(mapdef, s)
        except SingularHit as e:
            e.step = step
            hit = e
            break
        if record == "all":
            states.append(s)
        else:
            states[0] = s
    return OrbitResult(states, hit)


def preimage_degree(map_id, n):
    """Algebraic degree of the n-th iterate of a one-dimensional degree-2 map.

    Composes the map with itself exactly and reads the reduced degree, which
    counts generic preimages. Reduction is certified cheaply: if numerator
    and denominator are coprime mod a prime, they are coprime over Q.
    """
    if isinstance(map_id, str):
        map_id = parse_map_id(map_id)
    if map_id.name not in ("logistic", "ritt_real"):
        raise ValueError("preimage_degree expects logistic or ritt4")
    if n == 0:
        return 1
    one = UniPoly([mpq(1)])
    if map_id.name == "logistic":
        num, den = UniPoly([mpq(-1), mpq(0), mpq(2)]), one
        for _ in range(n - 1):
            # P(g) with P = 2t^2 - 1 over num/den
            num, den = (num * num).scale(2) - den * den, den * den
    else:
        num, den = UniPoly([mpq(-1), mpq(2), mpq(-1)]), UniPoly([mpq(0), mpq(4)])
        for _ in range(n - 1):
            # f(g) = -(g-1)^2/(4g) composed at g = num/den
            diff = num - den
            num, den = -(diff * diff), (num * den).scale(4)
    if not _coprime_mod_p(num, den, 2147483647):
        g = unipoly_gcd(num, den)
        if g.degree > 0:
            num, den = num // g, den // g
    return max(num.degree, den.degree)


def _coprime_mod_p(a, b, p):
    def reduce(poly):
        out = []
        for c in poly.coeffs:
            q = mpq(c)
            if int(q.denominator) % p == 0:
                return None
            out.append(FpElem(int(q.numerator), p) / FpElem(int(q.denominator), p))
        return UniPoly(out)

    ra, rb = reduce(a), reduce(b)
    if ra is None or rb is None or ra.degree != a.degree or rb.degree != b.degree:
        return False
    return unipoly_gcd(ra, rb).degree == 0
