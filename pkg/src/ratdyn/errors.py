"""Exception taxonomy shared by all ratdyn modules."""


class RatdynError(Exception):
    """Base class for all library errors."""


class SingularHit(RatdynError):
    """A denominator vanished while stepping a map.

    Carries which denominator fired and at which orbit index when known.
    """

    def __init__(self, message, step=None, denominator=None):
        super().__init__(message)
        self.step = step
        self.denominator = denominator


class NotInvertible(RatdynError):
    """Backward stepping requested for a one-dimensional map."""


class DivisionByZero(RatdynError):
    """Exact division by zero outside of map stepping."""


class ZeroInverse(RatdynError):
    """Modular inverse of zero requested."""


class ZeroHeight(RatdynError):
    """Height of the zero rational requested; caller decides how to skip."""


class LineDegenerate(RatdynError):
    """A probe line collapsed into a singular locus; retry with a fresh line."""


class InsufficientData(RatdynError):
    """Not enough sequence terms for the requested fit."""


class Inconsistent(RatdynError):
    """Degree sequences disagree across lines/primes even in exact mode."""


class PrecisionExhausted(RatdynError):
    """Precision doubling hit its retry limit without meeting the target."""


class CapReached(RatdynError):
    """Orbit-length cap hit before a cycle closed or a singularity fired."""


class NotPrime(RatdynError):
    """A modulus that must be prime is not."""


class CoincidentAbscissae(RatdynError):
    """The two points of an elliptic state share an x coordinate."""


class TwoTorsion(RatdynError):
    """Point duplication at a two-torsion point (y = 0)."""


class DegenerateDenominator(RatdynError):
    """Triplication denominator vanished (three-torsion point)."""


class AdditionDegenerate(RatdynError):
    """Chord construction degenerates: multiple of the current point shares
    an abscissa with the previous point."""
