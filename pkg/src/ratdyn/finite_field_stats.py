"""Orbit-length statistics of catalog maps over prime fields.

Integrable maps confine orbits to invariant curves, so their cycle lengths
over F_p stay near the number of points on such a curve: O(p), with the
Hasse-Weil window p + 1 +- 2g sqrt(p) as the natural yardstick. Chaotic
maps wander and close much earlier, giving a clean numeric fingerprint.
"""

import csv
import io
import math
import random
from dataclasses import dataclass
from typing import Optional

from gmpy2 import is_prime

from .errors import CapReached, NotPrime, RatdynError
from .maps import PlaneMapDef, get_map

FLAG_CLOSED = "closed"
FLAG_TAIL = "tail"
FLAG_SINGULAR = "singular"
FLAG_CAP = "cap"


def hw_bound(p, genus=1):
    """Upper Hasse-Weil point count p + 1 + 2g sqrt(p) for a genus-g curve."""
    return p + 1 + 2 * genus * math.sqrt(p)


def ff_orbit_length(map_id, p, start, cap=None, strict=False):
    """Distinct states visited from `start` before the orbit terminates.

    Returns (length, flag). A forward orbit over F_p ends by revisiting a
    state ("closed" when that state is the start, "tail" otherwise), by
    stepping into a vanishing denominator ("singular"), or by exhausting
    the cap (flag "cap", or CapReached when strict). Birational maps close
    at the start from all but a thin set of states; strict=True turns a
    "tail" ending into an error to surface that expectation.
    """
    mapdef = map_id if isinstance(map_id, PlaneMapDef) else get_map(map_id)
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if cap is None:
        cap = p * p
    step = mapdef.compile_modp(p)
    state = (int(start[0]) % p, int(start[1]) % p)
    seen = {state: 0}
    for _ in range(cap):
        nxt = step(*state)
        if nxt is None:
            return len(seen), FLAG_SINGULAR
        if nxt in seen:
            if seen[nxt] != 0:
                if strict:
                    raise RatdynError(
                        f"orbit re-entered at index {seen[nxt]}, not at start")
                return len(seen), FLAG_TAIL
            return len(seen), FLAG_CLOSED
        seen[nxt] = len(seen)
        state = nxt
    if strict:
        raise CapReached(f"no closure within {cap} steps")
    return len(seen), FLAG_CAP


@dataclass
class FFStatsRow:
    map: str
    p: int
    samples: int
    seed: int
    mean_length: float
    normalized: float
    flag: str

    def as_csv_row(self):
        return [self.map, self.p, self.samples, self.seed,
                f"{self.mean_length:.6f}", f"{self.normalized:.6f}", self.flag]


def ff_mean_length(map_id, p, samples=100, seed=0, cap=None):
    """Mean terminal orbit length over uniformly sampled starts in F_p^2."""
    mapdef = map_id if isinstance(map_id, PlaneMapDef) else get_map(map_id)
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    rng = random.Random(seed)
    total = 0
    capped = False
    for _ in range(samples):
        start = (rng.randrange(p), rng.randrange(p))
        length, flag = ff_orbit_length(mapdef, p, start, cap=cap)
        total += length
        if flag == FLAG_CAP:
            capped = True
    mean = total / samples
    return FFStatsRow(str(mapdef.map_id), p, samples, seed, mean,
                      mean / hw_bound(p), FLAG_CAP if capped else "ok")


def primes_in(pmin, pmax, count=None):
    """Primes in [pmin, pmax], evenly thinned to `count` when given."""
    if pmin > pmax:
        raise ValueError("empty prime range")
    sieve = list(range(pmax + 1))
    sieve[:2] = [0, 0]
    for q in range(2, int(math.isqrt(pmax)) + 1):
        if sieve[q]:
            sieve[q * q :: q] = [0] * len(sieve[q * q :: q])
    primes = [q for q in sieve[pmin:] if q]
    if not primes:
        raise ValueError(f"no primes in [{pmin}, {pmax}]")
    if count is None or count >= len(primes):
        return primes
    idx = [round(i * (len(primes) - 1) / (count - 1)) for i in range(count)] \
        if count > 1 else [0]
    return sorted({primes[i] for i in idx})


def ff_sweep(map_id, pmin=500, pmax=5000, count=24, samples=100, seed=0,
             cap=None):
    """FFStatsRow per selected prime, in increasing prime order."""
    mapdef = map_id if isinstance(map_id, PlaneMapDef) else get_map(map_id)
    rows = []
    for p in primes_in(pmin, pmax, count):
        rows.append(ff_mean_length(mapdef, p, samples=samples, seed=seed,
                                   cap=cap))
    return rows


CSV_HEADER = ["map", "p", "samples", "seed", "mean_length", "normalized",
              "flag"]


def rows_to_csv(rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for row in rows:
        w.writerow(row.as_csv_row())
    return buf.getvalue()
