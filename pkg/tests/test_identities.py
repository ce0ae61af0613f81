from __future__ import annotations

import math
from decimal import Decimal
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from apsums.identities import (
    TableRow,
    error_at,
    generate_table,
    integral_target,
    race_tally,
    read_table_csv,
    round_half_up,
    sign_statistics,
    table_csv,
    theorem2_partial_integral,
)
from apsums.prime_stats import DomainError, RationalExponent, power_sum_at_threshold
from apsums.sieve import BoundError, ResidueClass, SieveError
from oracles import step_integral, trial_division_primes

C41, C43, C53 = ResidueClass(4, 1), ResidueClass(4, 3), ResidueClass(5, 3)


def fmt(value) -> str:
    return str(round_half_up(value))


class TestErrorRows:
    def test_examples(self):
        row = error_at(10**4, 1, C41)
        assert (row.pi, row.approx, fmt(row.error_pct)) == (609, 515.0, "15.43514")
        row = error_at(10**6, 1, C43)
        assert (row.pi, row.approx, fmt(row.error_pct)) == (39322, 39497.0, "-0.44504")
        row = error_at(10**4, "1/2", C53)
        assert (fmt(row.approx), fmt(row.error_pct)) == ("321.30898", "-3.64806")

    def test_table12_row(self):
        rows = generate_table("-1/10", C53, [10**6, 10**7])
        assert (fmt(rows[1].approx), fmt(rows[1].error_pct)) == ("166229.30179", "0.00042")

    @given(st.integers(2, 10**6), st.sampled_from(["1", "1/2", "-1/10", "-1/12"]))
    def test_approx_is_the_threshold_sum(self, x, k):
        rc = ResidueClass(1, 0)
        assert error_at(x, k, rc).approx == power_sum_at_threshold(x, k, rc).value

    @given(st.lists(st.integers(3, 10**6), min_size=1, max_size=6, unique=True),
           st.sampled_from([(1, 0), (4, 1), (4, 3), (5, 2)]))
    def test_zero_exponent_has_no_error(self, xs, cls):
        rc = ResidueClass(*cls)
        xs = sorted(x for x in xs if x >= 7)  # every class here has a prime <= 7
        if xs:
            assert all(row.error_pct == 0.0 for row in generate_table(0, rc, xs))

    def test_grid_validation(self):
        with pytest.raises(SieveError):
            generate_table(1, C41, [])
        with pytest.raises(SieveError):
            generate_table(1, C41, [10**5, 10**4])
        with pytest.raises(DomainError):
            error_at(1, 1, C41)
        with pytest.raises(DomainError):
            error_at(4, 1, C41)  # no primes 1 mod 4 yet

    def test_error_shrinks_across_the_grid(self):
        # relative error decays along the table grid for each exponent
        for k in ("1", "1/2", "-1/10", "-1/12"):
            rows = generate_table(k, C43, [10**4, 10**6, 10**7])
            assert abs(rows[-1].error_pct) < abs(rows[0].error_pct)

    def test_signs_follow_the_exponent(self):
        # k = 1 undershoots at the start of the grid, k = -1/12 overshoots
        assert error_at(10**4, 1, C41).sign == 1
        assert error_at(10**4, "-1/12", C43).sign == -1


class TestCsv:
    def test_round_trip(self):
        rows = generate_table("1/2", C41, [10**4, 10**5])
        text = table_csv(rows)
        assert text.startswith("x,pi,approx,error_pct\n") and "\r" not in text
        parsed = read_table_csv(text)
        assert parsed[0][:2] == (10**4, 609)
        assert parsed[0][2] == Decimal("617.62512")

    def test_half_up_on_exact_binary_value(self):
        assert fmt(0.125) == "0.12500"
        assert fmt(2.675e-5) == "0.00003"
        assert fmt(-1.000005) == "-1.00001"  # binary value lies just above the tie


class TestSignStatistics:
    def test_zero_rows_are_separate(self):
        rows = [[TableRow(10, 4, 4.0, 0.0), TableRow(20, 8, 7.0, 12.5), TableRow(30, 10, 11.0, -10.0)]]
        stats = sign_statistics(rows)
        assert (stats.positive, stats.negative, stats.zero) == (1, 1, 1)
        assert stats.fraction_positive == 0.5
        assert stats.percent("negative") == Decimal("50.00")

    def test_single_zero_row(self):
        stats = sign_statistics([[TableRow(10, 4, 4.0, 0.0)]])
        assert (stats.signed, stats.zero, stats.fraction_positive) == (0, 1, 0.0)

    def test_empty(self):
        with pytest.raises(ValueError):
            sign_statistics([[]])


class TestIntegralIdentity:
    def test_target(self):
        assert integral_target(RationalExponent(1), C41) == pytest.approx(-math.log(2) / 4, rel=1e-15)
        assert integral_target(RationalExponent(0), C41) == 0.0

    @pytest.mark.parametrize("X", [10**2, 10**3])
    @pytest.mark.parametrize("k, cls", [("1", (4, 1)), ("1/2", (4, 3)), ("-1/10", (5, 3)), ("1", (1, 0))])
    def test_against_direct_integration(self, X, k, cls):
        rc = ResidueClass(*cls)
        report = theorem2_partial_integral(k, rc, X)
        direct = step_integral(Fraction(k), *cls, X)
        assert report.partial_integral == pytest.approx(direct, rel=1e-10, abs=1e-12)

    def test_gap_examples(self):
        small = theorem2_partial_integral(1, C41, 10**2)
        large = theorem2_partial_integral(1, C41, 10**4)
        assert large.gap <= 0.02
        assert large.gap < small.gap
        assert theorem2_partial_integral(1, ResidueClass(1, 0), 10**4).gap <= 0.02

    def test_zero_exponent(self):
        report = theorem2_partial_integral(0, C41, 10**3)
        assert report.partial_integral == report.target == 0.0

    def test_bound_error(self):
        with pytest.raises(BoundError, match="requires sieving"):
            theorem2_partial_integral(1, C41, 10**5, max_limit=10**9)


class TestRace:
    def test_bias_and_complement(self):
        t31 = race_tally(4, 3, 1, 10**6, 1)
        t13 = race_tally(4, 1, 3, 10**6, 1)
        assert t31.lead_fraction > 0.5
        assert t31.samples == t13.samples == 10**6 - 1
        assert t13.lead_fraction == pytest.approx(1 - t31.lead_fraction - t31.tie_fraction, abs=1e-15)
        assert t31.leader_changes == t13.leader_changes

    def test_matches_direct_counting(self):
        primes = trial_division_primes(3000)
        leads = ties = 0
        for x in range(2, 3001, 7):
            d = sum(p % 4 == 3 for p in primes if p <= x) - sum(p % 4 == 1 for p in primes if p <= x)
            leads += d > 0
            ties += d == 0
        t = race_tally(4, 3, 1, 3000, 7)
        assert (t.leads, t.ties) == (leads, ties)

    def test_stride_does_not_depend_on_blocks(self):
        a = race_tally(3, 2, 1, 2 * 10**6, 13)
        b = race_tally(3, 2, 1, 2 * 10**6, 13, segment_size=1024, worker_count=3)
        assert a == b

    def test_validation(self):
        with pytest.raises(SieveError):
            race_tally(4, 1, 1, 1000)
        with pytest.raises(SieveError):
            race_tally(4, 2, 1, 1000)
