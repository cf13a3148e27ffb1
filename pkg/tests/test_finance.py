"""Debt accumulation, amortization, and transit-time surcharges."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lunaprop import finance
from lunaprop.finance import DiscountSchedule


class TestDiscountSchedule:
    def test_linear_decline(self):
        sched = DiscountSchedule()
        assert sched.rate(0.0) == pytest.approx(0.217)
        assert sched.rate(30.0) == pytest.approx(0.12)
        assert sched.rate(15.0) == pytest.approx((0.217 + 0.12) / 2)
        assert sched.rate(45.0) == pytest.approx(0.12)  # clamped past the span

    def test_constant_mode(self):
        sched = DiscountSchedule.constant(0.272)
        assert sched.rate(0.0) == sched.rate(29.0) == 0.272


def brute_force_debt(outlays, launch, rate):
    """Oracle: roll the balance forward one year at a time."""
    debt = 0.0
    for outlay in outlays:
        debt = debt * (1.0 + rate) + outlay
    return debt + launch


class TestAccumulateBuildupDebt:
    def test_zero_rate_is_plain_sum(self):
        sched = DiscountSchedule.constant(0.0)
        debt = finance.accumulate_buildup_debt([100.0] * 5, 50.0, sched)
        assert debt == pytest.approx(550.0)

    def test_single_outlay_one_step(self):
        sched = DiscountSchedule.constant(0.1)
        debt = finance.accumulate_buildup_debt([100.0, 0.0], 30.0, sched)
        assert debt == pytest.approx(100.0 * 1.1 + 30.0)

    def test_uniform_outlays_match_annuity_formula(self):
        # 5 x $100M at constant 21.7%: 100M * ((1.217^5 - 1)/0.217)
        sched = DiscountSchedule.constant(0.217)
        debt = finance.accumulate_buildup_debt([100e6] * 5, 0.0, sched)
        assert debt == pytest.approx(100e6 * ((1.217 ** 5 - 1.0) / 0.217), rel=1e-12)
        assert debt == pytest.approx(769.42e6, rel=1e-4)

    @settings(max_examples=100)
    @given(
        outlays=st.lists(st.floats(0.0, 1e9), min_size=1, max_size=12),
        launch=st.floats(0.0, 1e9),
        rate=st.floats(0.0, 0.4),
    )
    def test_matches_brute_force(self, outlays, launch, rate):
        sched = DiscountSchedule.constant(rate)
        got = finance.accumulate_buildup_debt(outlays, launch, sched)
        assert got == pytest.approx(brute_force_debt(outlays, launch, rate), rel=1e-9)

    def test_future_value_uniform_fractional_years(self):
        # closed form agrees with the list version on integer spans
        sched = DiscountSchedule.constant(0.12)
        listed = finance.accumulate_buildup_debt([7.0] * 6, 0.0, sched)
        assert finance.future_value_uniform(7.0, 6.0, 0.12) == pytest.approx(listed)
        # and interpolates smoothly between them
        below = finance.future_value_uniform(7.0, 5.0, 0.12)
        mid = finance.future_value_uniform(7.0, 5.5, 0.12)
        assert below < mid < listed


class TestAmortize:
    def test_zero_rate(self):
        payment, interest = finance.amortize(1000.0, 10, DiscountSchedule.constant(0.0))
        assert payment == 100.0
        assert interest == 0.0

    def test_standard_annuity_value(self):
        payment, interest = finance.amortize(1e9, 10, DiscountSchedule.constant(0.12))
        assert payment == pytest.approx(176.98e6, rel=1e-4)
        assert interest == pytest.approx(10 * payment - 1e9)

    def test_single_year_balloon(self):
        payment, interest = finance.amortize(1e9, 1, DiscountSchedule.constant(0.217))
        assert payment == pytest.approx(1.217e9)
        assert interest == pytest.approx(0.217e9)

    @settings(max_examples=100)
    @given(debt=st.floats(1.0, 1e12), rate=st.floats(0.0, 0.35),
           life=st.integers(1, 40))
    def test_present_value_identity(self, debt, rate, life):
        sched = DiscountSchedule.constant(rate)
        payment, _ = finance.amortize(debt, life, sched)
        pv = sum(payment / (1.0 + rate) ** k for k in range(1, life + 1))
        assert pv == pytest.approx(debt, rel=1e-6)


class TestSpecificFinanceCost:
    def test_zero_interest(self):
        assert finance.specific_finance_cost(0.0, 1000.0, 2000.0) == (0.0, 0.0)

    def test_division_example(self):
        f, xi = finance.specific_finance_cost(500e6, 5_000_000.0, 2000.0)
        assert f == pytest.approx(100.0)
        assert xi == pytest.approx(0.05)

    def test_xi_halves_when_launch_cost_doubles(self):
        f1, xi1 = finance.specific_finance_cost(500e6, 5e6, 2000.0)
        f2, xi2 = finance.specific_finance_cost(500e6, 5e6, 4000.0)
        assert f1 == f2
        assert xi2 == pytest.approx(xi1 / 2.0)


class TestSepTransitPenalty:
    def test_no_transit(self):
        assert finance.sep_transit_penalty(0.0, 0.12) == 1.0

    def test_full_trip_at_12_percent(self):
        assert finance.sep_transit_penalty(1.0, 0.12) == pytest.approx(
            1.12 ** 1.5, rel=1e-12)
        assert finance.sep_transit_penalty(1.0, 0.12) == pytest.approx(1.1853, abs=1e-4)

    def test_zero_rate(self):
        assert finance.sep_transit_penalty(0.7, 0.0) == 1.0

    def test_fraction_domain(self):
        with pytest.raises(ValueError):
            finance.sep_transit_penalty(1.4, 0.12)
