"""Orbit-length statistics over prime fields: termination flags, sampling,
prime selection, and CSV output."""

import csv
import io

import pytest

from ratdyn import CapReached, NotPrime, RatdynError, parse_map_id
from ratdyn.finite_field_stats import (
    CSV_HEADER,
    ff_mean_length,
    ff_orbit_length,
    ff_sweep,
    hw_bound,
    primes_in,
    rows_to_csv,
)


def test_hw_bound():
    assert hw_bound(1009) == 1009 + 1 + 2 * 1009**0.5
    assert hw_bound(1009, genus=2) == 1009 + 1 + 4 * 1009**0.5


def test_fixed_point_closes_immediately():
    # (1, 1) is fixed for the power map: 1^k / 1 = 1
    assert ff_orbit_length(parse_map_id("power:k=3"), 101, (1, 1)) == (1, "closed")


def test_singular_start_flagged():
    # the hv denominator is the square of the live coordinate
    assert ff_orbit_length(parse_map_id("hv:a=1"), 101, (5, 0)) == (1, "singular")


def test_tail_for_non_invertible_map():
    # logistic mod 7 from (0, 0): 0 -> -1 -> 1 -> 1 re-enters off the start
    assert ff_orbit_length(parse_map_id("logistic"), 7, (0, 0)) == (4, "tail")
    with pytest.raises(RatdynError):
        ff_orbit_length(parse_map_id("logistic"), 7, (0, 0), strict=True)


def test_cap_flag_and_strict_cap():
    mid = parse_map_id("tan:k=3")
    length, flag = ff_orbit_length(mid, 1009, (3, 5), cap=3)
    assert flag == "cap" and length == 4
    with pytest.raises(CapReached):
        ff_orbit_length(mid, 1009, (3, 5), cap=3, strict=True)


def test_composite_modulus_rejected():
    with pytest.raises(NotPrime):
        ff_orbit_length(parse_map_id("tan:k=3"), 1000, (1, 2))
    with pytest.raises(NotPrime):
        ff_mean_length(parse_map_id("tan:k=3"), 1000)


def test_mean_length_deterministic_per_seed():
    mid = parse_map_id("mcm:a=2")
    a = ff_mean_length(mid, 503, samples=30, seed=9)
    b = ff_mean_length(mid, 503, samples=30, seed=9)
    assert (a.mean_length, a.normalized, a.flag) == (
        b.mean_length, b.normalized, b.flag)
    assert a.normalized == a.mean_length / hw_bound(503)
    assert a.map == "mcm:a=2" and a.p == 503 and a.samples == 30 and a.seed == 9


def test_primes_in_selection():
    ps = primes_in(500, 600)
    assert ps[0] == 503 and ps[-1] == 599
    assert all(all(p % q for q in range(2, int(p**0.5) + 1)) for p in ps)
    thin = primes_in(500, 5000, count=10)
    assert len(thin) == 10
    assert thin == sorted(thin)
    assert thin[0] >= 500 and thin[-1] <= 5000
    with pytest.raises(ValueError):
        primes_in(24, 28)


def test_sweep_rows_and_csv_shape():
    rows = ff_sweep(parse_map_id("tan:k=2"), pmin=500, pmax=700, count=4,
                    samples=10, seed=1)
    assert len(rows) == 4
    assert [r.p for r in rows] == sorted(r.p for r in rows)
    text = rows_to_csv(rows)
    parsed = list(csv.reader(io.StringIO(text)))
    assert parsed[0] == CSV_HEADER
    assert len(parsed) == 5
    for rec in parsed[1:]:
        assert rec[0] == "tan:k=2"
        float(rec[4]), float(rec[5])


def test_integrable_versus_chaotic_contrast():
    """Orbit closure length separates the zero-entropy map from hv."""
    for p in (1009, 1499):
        t = ff_mean_length(parse_map_id("tan:k=3"), p, samples=80, seed=5)
        h = ff_mean_length(parse_map_id("hv:a=1"), p, samples=80, seed=5)
        assert h.normalized > t.normalized
        assert h.normalized > 0.5  # hv orbits fill a positive HW fraction
