"""Degree growth on a generic line: exact sequences, recurrence fitting,
dominant roots, and the entropy driver."""

import json
import math
from fractions import Fraction

import pytest

from ratdyn import (
    FP_PRIMES,
    GenericLine,
    InsufficientData,
    LineDegenerate,
    degree_sequence,
    dominant_root,
    entropy,
    entropy_from_heights,
    fit_recurrence,
    parse_map_id,
)

from oracles import degree_series_oracle

TAN3_PREFIX = degree_series_oracle(10)
HV_PREFIX = [1, 3, 9, 27, 73, 195, 513, 1347, 3529, 9243, 24201]


def test_tan3_degrees_match_series_oracle():
    seq = degree_sequence(parse_map_id("tan:k=3"), 8)
    assert seq.degrees == TAN3_PREFIX[:9]
    assert seq.field == f"Fp({FP_PRIMES[0]})"


def test_hv_degrees_follow_known_recurrence():
    seq = degree_sequence(parse_map_id("hv:a=1"), 10)
    assert seq.degrees == HV_PREFIX
    # d_n = 3 d_{n-1} - 3 d_{n-3} + d_{n-4}
    d = seq.degrees
    for n in range(4, 11):
        assert d[n] == 3 * d[n - 1] - 3 * d[n - 3] + d[n - 4]


def test_prime_independence_small_prefix():
    """Two big primes and the exact rational run agree on short prefixes."""
    cheap = [("logistic", 8), ("ritt4", 8), ("tan:k=2", 8), ("mcm:a=2", 8),
             ("power:k=3", 6), ("tan:k=3", 5), ("hv:a=1", 5)]
    for text, N in cheap:
        mid = parse_map_id(text)
        line = GenericLine.random(3)
        a = degree_sequence(mid, N, field="Fp", p=FP_PRIMES[0], line=line)
        b = degree_sequence(mid, N, field="Fp", p=FP_PRIMES[1], line=line)
        c = degree_sequence(mid, N, field="Q", line=line)
        assert a.degrees == b.degrees == c.degrees, text


def test_degree_sequence_rejects_gaussian_map():
    with pytest.raises(ValueError):
        degree_sequence(parse_map_id("ritt3i"), 4)


def test_explicit_degenerate_line_raises():
    bad = GenericLine(1, 0, 1, 0)  # second coordinate identically zero
    with pytest.raises(LineDegenerate):
        degree_sequence(parse_map_id("hv:a=1"), 4, line=bad)


def test_random_line_rejection_rules():
    for seed in range(40):
        ln = GenericLine.random(seed)
        assert ln.b1 != 0 and ln.b2 != 0
        assert (ln.a1, ln.a2) != (0, 0)
        assert all(abs(c) <= 100 for c in (ln.a1, ln.a2, ln.b1, ln.b2))
    assert GenericLine.random(5) == GenericLine.random(5)


def test_fit_recurrence_geometric():
    fit = fit_recurrence([1, 2, 4, 8, 16, 32, 64])
    assert fit.coeffs == [Fraction(2)]
    assert fit.transient == 0
    assert fit.char_poly() == [Fraction(1), Fraction(-2)]


def test_fit_recurrence_hv_window():
    fit = fit_recurrence(HV_PREFIX)
    assert fit.coeffs == [Fraction(3), Fraction(0), Fraction(-3), Fraction(1)]
    assert fit.transient == 0


def test_fit_recurrence_tan3_needs_more_terms():
    # order five plus transient needs twelve terms; eleven are not enough
    assert fit_recurrence(TAN3_PREFIX) is None


def test_fit_recurrence_with_transient():
    # constant-after-one-step sequence: d_n = d_{n-1} for n >= 2 only
    fit = fit_recurrence([1, 5, 5, 5, 5, 5, 5, 5])
    assert fit.coeffs == [Fraction(1)]
    assert fit.transient <= 1


def test_fit_recurrence_insufficient_data():
    with pytest.raises(InsufficientData):
        fit_recurrence([1, 2, 4])


def test_fit_refuses_unverifiable_window():
    # six terms can fit order 2 with transient 0 but order 3 never verifies
    degs = [1, 2, 4, 8, 16, 31]  # breaks the doubling at the last term
    assert fit_recurrence(degs) is None


def test_dominant_root_values():
    phi2 = (3 + math.sqrt(5)) / 2
    root = dominant_root([Fraction(1), Fraction(-3), Fraction(0), Fraction(3),
                          Fraction(-1)])
    assert abs(float(root) - phi2) < 1e-12
    # triple root at 1 must not stall the solver
    root = dominant_root([Fraction(1), Fraction(-3), Fraction(3), Fraction(-1)])
    assert abs(float(root) - 1.0) < 1e-12


def test_entropy_power_map_exact():
    rep = entropy(parse_map_id("power:k=4"))
    assert not rep.fallback
    assert rep.recurrence is not None
    assert abs(rep.entropy - math.log(2 + math.sqrt(3))) < 1e-12


def test_entropy_tan2_vanishes():
    rep = entropy(parse_map_id("tan:k=2"))
    assert rep.entropy == 0.0
    assert rep.recurrence is not None
    assert rep.recurrence.coeffs == [Fraction(2), Fraction(-1)]


def test_entropy_report_json_schema():
    rep = entropy(parse_map_id("logistic"))
    doc = json.loads(rep.to_json())
    assert set(doc) == {"map", "field", "degrees", "recurrence", "char_poly",
                        "entropy", "fallback"}
    assert doc["map"] == "logistic"
    assert doc["degrees"][0] == 1
    assert doc["recurrence"]["coeffs"] == [2]
    assert abs(doc["entropy"] - math.log(2)) < 1e-12


def test_entropy_fallback_when_no_fit_certifies():
    rep = entropy(parse_map_id("tan:k=3"), N=6)
    assert rep.fallback
    assert rep.recurrence is None
    assert abs(rep.entropy - math.log(719 / 275)) < 1e-12


def test_entropy_from_heights_recovers_rate():
    heights = [3 * 2**n for n in range(12)]
    slope = entropy_from_heights(heights)
    assert abs(slope - math.log(2)) < 1e-9


def test_entropy_from_heights_skips_zeros_and_guards():
    heights = [0, 0, 4, 8, 16, 32, 64, 128]
    slope = entropy_from_heights(heights)
    assert abs(slope - math.log(2)) < 1e-9
    with pytest.raises(InsufficientData):
        entropy_from_heights([0, 0, 0, 5])
