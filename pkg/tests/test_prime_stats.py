from __future__ import annotations

import json
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from apsums.prime_stats import (
    CheckpointedCounts,
    DomainError,
    PowerSumAccumulator,
    RationalExponent,
    SumQuery,
    checkpointed_counts,
    count_primes,
    evaluate_queries,
    iroot,
    neumaier_sum,
    power_bound,
    power_sum,
    power_sum_at_threshold,
    threshold_bound,
    threshold_membership,
)
from apsums.identities import round_half_up
from apsums.sieve import ResidueClass
from oracles import mp_power_sum

C41, C43 = ResidueClass(4, 1), ResidueClass(4, 3)
TABLE_EXPONENTS = ["1", "1/2", "-1/10", "-1/12"]
exponents = st.tuples(st.integers(-11, 12), st.integers(1, 12)).filter(
    lambda ab: ab[0] / ab[1] > -0.95).map(lambda ab: RationalExponent(*ab))


class TestRationalExponent:
    @pytest.mark.parametrize("text, num, den", [("1", 1, 1), ("1/2", 1, 2), ("-1/10", -1, 10),
                                                ("-1/12", -1, 12), ("4/6", 2, 3)])
    def test_parse(self, text, num, den):
        k = RationalExponent.parse(text)
        assert (k.numerator, k.denominator) == (num, den)
        assert RationalExponent.parse(str(k)) == k

    @pytest.mark.parametrize("bad", ["-1", "-3/2", "abc", "1/0", 0.5])
    def test_rejects(self, bad):
        with pytest.raises(DomainError):
            RationalExponent.parse(bad)

    @given(exponents)
    def test_string_round_trip(self, k):
        assert RationalExponent.parse(str(k)) == k
        assert k.as_fraction() > -1


def test_count_examples():
    assert count_primes(10**4, C43) == 619
    assert count_primes(1, C41) == 0
    assert count_primes(10, ResidueClass(1, 0)) == 4


def test_power_sum_examples():
    assert power_sum(100, 1, C41).exact_sum == 515
    assert power_sum(10, 0, ResidueClass(1, 0)).value == 4.0
    at_threshold = power_sum_at_threshold(10**4, "1/2", C41)
    assert str(round_half_up(at_threshold.value)) == "617.62512"


def test_threshold_examples():
    assert power_sum_at_threshold(10**4, 1, C41).exact_sum == 515
    assert str(round_half_up(power_sum_at_threshold(10**4, "-1/10", C41).value)) == "613.50169"
    assert str(round_half_up(power_sum_at_threshold(10**4, "-1/12", C43).value)) == "622.36367"


def test_membership_examples():
    one = RationalExponent(1)
    assert threshold_membership(97, 10**4, one)
    assert not threshold_membership(101, 10**4, one)
    assert threshold_membership(2, 2, RationalExponent(0))


def test_published_boundary_only_moves_positive_exponents():
    # 10^4 is a perfect square, so the exact and published rules differ at k = 1
    assert threshold_bound(10**4, RationalExponent(1)) == 100
    assert threshold_bound(10**4, RationalExponent(1), "published") == 99
    for k in ("-1/10", "-1/12", "0"):
        k = RationalExponent.parse(k)
        assert threshold_bound(10**6, k, "published") == threshold_bound(10**6, k)
    with pytest.raises(ValueError):
        threshold_bound(10, RationalExponent(1), "open")


@given(st.integers(2, 10**12), exponents)
def test_threshold_bound_is_exact(x, k):
    b = threshold_bound(x, k)
    assert threshold_membership(b, x, k)
    assert not threshold_membership(b + 1, x, k)


@given(st.integers(0, 10**30), st.integers(1, 9))
def test_iroot(n, e):
    r = iroot(n, e)
    assert r**e <= n < (r + 1) ** e


@given(st.integers(2, 10**6), exponents)
def test_power_bound(x, k):
    b = power_bound(x, k)
    f = k.as_fraction() + 1
    # b <= x^f < b + 1, in exact integer form
    assert b ** f.denominator <= x ** f.numerator < (b + 1) ** f.denominator


@pytest.mark.parametrize("k", TABLE_EXPONENTS)
@pytest.mark.parametrize("x", [2, 97, 1000, 10**5])
def test_power_sum_matches_high_precision_oracle(oracle_primes_1e5, k, x):
    for rc in (ResidueClass(1, 0), C41, ResidueClass(5, 3)):
        primes = [int(p) for p in oracle_primes_1e5 if p <= x and rc.contains(int(p))]
        expected = mp_power_sum(primes, Fraction(k))
        got = power_sum(x, k, rc).value
        if not primes:
            assert got == 0.0
            continue
        assert abs(mpmath.mpf(got) - expected) <= 1e-10 * abs(expected)


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_exact_twin_agrees_with_float(k):
    acc = power_sum(10**6, k, C43)
    assert acc.exact_sum is not None
    assert abs(acc.value - acc.exact_sum) <= 1e-12 * acc.exact_sum


@given(st.integers(0, 10**6), st.sampled_from([(1, 0), (4, 1), (4, 3), (5, 1), (5, 2), (5, 3), (5, 4)]))
def test_zero_exponent_is_the_count(x, cls):
    rc = ResidueClass(*cls)
    acc = power_sum(x, 0, rc)
    assert acc.value == acc.term_count == acc.exact_sum == count_primes(x, rc)


@given(st.integers(2, 50_000), st.integers(0, 50_000), exponents)
def test_monotone_in_x(x, dx, k):
    lo, hi = power_sum(x, k, C41), power_sum(x + dx, k, C41)
    assert hi.value >= lo.value


def test_segment_size_and_workers_do_not_change_values():
    queries = [SumQuery(b, RationalExponent.parse(k), C41) for b in (10**4, 77_777, 10**6)
               for k in TABLE_EXPONENTS]
    base = evaluate_queries(queries)
    for opts in ({"segment_size": 1024}, {"worker_count": 4}, {"segment_size": 4096, "worker_count": 2}):
        other = evaluate_queries(queries, **opts)
        assert {q: base[q].to_json() for q in queries} == {q: other[q].to_json() for q in queries}


def test_accumulator_json_round_trip():
    acc = power_sum(10**5, "-1/12", C43)
    doc = json.loads(json.dumps(acc.to_json()))
    back = PowerSumAccumulator.from_json(doc)
    assert back == acc
    assert back.value == acc.value


def test_checkpointed_counts_round_trip():
    rows = checkpointed_counts([10**4, 10**5], C41, ["1", "1/2"])
    assert [r.pi for r in rows] == [609, 4783]
    for row in rows:
        again = CheckpointedCounts.from_json(row.to_json())
        assert again == row
        assert again.to_json() == row.to_json()


def test_neumaier_sum_beats_naive_summation():
    values = np.array([1.0, 1e100, 1.0, -1e100] * 10)
    assert neumaier_sum(values) == 20.0
