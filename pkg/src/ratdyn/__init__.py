"""ratdyn: exact experimentation with solvable chaotic rational maps.

Iterate reversible birational maps in exact and arbitrary-precision
arithmetic, measure algebraic entropy through degree growth, run
orbit-length statistics over prime fields, and verify closed-form
solvability and invariants, including an elliptic four-variable family.
"""

__version__ = "0.1.0"

from .arithmetic import (BigRat, FpElem, GaussRat, MPReal, RatFunc, UniPoly,
                         bigrat, fp_inverse, height, mp_pi, unipoly_gcd)
from .degree_growth import (FP_PRIMES, DegreeSequence, EntropyReport,
                            GenericLine, RecurrenceFit, degree_sequence,
                            dominant_root, entropy, entropy_from_heights,
                            fit_recurrence)
from .elliptic import (CurveParams, ECPoint, EllState, curve_from_state,
                       ell_backward, ell_state, ell_step, ell_height_entropy,
                       invariant_C, iterate_ell, on_curve, random_ell_state,
                       wp_double, wp_mult, wp_triple)
from .errors import (AdditionDegenerate, CapReached, CoincidentAbscissae,
                     DegenerateDenominator, DivisionByZero, Inconsistent,
                     InsufficientData, LineDegenerate, NotInvertible,
                     NotPrime, PrecisionExhausted, RatdynError, SingularHit,
                     TwoTorsion, ZeroHeight, ZeroInverse)
from .finite_field_stats import (FFStatsRow, ff_mean_length, ff_orbit_length,
                                 ff_sweep, hw_bound, primes_in, rows_to_csv)
from .maps import (MapId, OrbitResult, PlaneMapDef, PlaneState,
                   build_tan_multiple, get_map, iterate_orbit, parse_map_id,
                   preimage_degree, step_backward, step_forward)
from .solvability import (ClosedFormWitness, LinearSolution, PrecisionPolicy,
                          RoundtripReport, circle_distance, conique_value,
                          invariant_tan2, roundtrip_test,
                          verify_closed_form_logistic, verify_closed_form_tan)

__all__ = [name for name in dir() if not name.startswith("_")]
