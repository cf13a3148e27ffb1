"""Debt buildup, amortization, and the launch-normalized finance cost.

Buildup-period outlays are financed because there is no revenue yet;
each year's outlay compounds annually to the end of the buildup, and the
resulting debt is retired by equal annual payments over the operational
life.  Rates are frozen per vintage: one scenario year's cost curve uses
the discount rate of that year for both compounding and amortization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Full-trip slow-transit time, LLO to LEO, in years.  Intermediate
# destinations prorate linearly by delta-v.
SEP_FULL_TRANSIT_YEARS = 1.5


@dataclass(frozen=True)
class DiscountSchedule:
    """Annual discount rate, constant or declining linearly over `span`."""

    r_start: float = 0.217
    r_end: float = 0.12
    span: float = 30.0
    mode: str = "linear-declining"  # or "constant"

    def __post_init__(self) -> None:
        if not 0.0 <= self.r_end <= self.r_start < 1.0:
            raise ValueError(
                f"need 0 <= r_end <= r_start < 1, got {self.r_start}, {self.r_end}"
            )
        if self.mode not in ("linear-declining", "constant"):
            raise ValueError(f"unknown discount mode {self.mode!r}")

    def rate(self, t: float) -> float:
        if self.mode == "constant":
            return self.r_start
        frac = min(max(t, 0.0), self.span) / self.span
        return self.r_start - (self.r_start - self.r_end) * frac

    @staticmethod
    def constant(rate: float) -> "DiscountSchedule":
        return DiscountSchedule(r_start=rate, r_end=rate, mode="constant")


@dataclass(frozen=True)
class FinanceResult:
    debt_at_production: float
    annual_payment: float
    total_interest: float
    f: float  # $/kg of lifetime product
    xi: float  # f normalized by the launch cost


def compound(amount: float, years: float, rate: float) -> float:
    """Future value of a single amount after `years` at an annual rate."""
    return amount * (1.0 + rate) ** years


def future_value_uniform(outlay_per_year: float, years: float, rate: float) -> float:
    """End-of-period future value of uniform end-of-year outlays.

    Closed form (((1+r)^n - 1)/r) so fractional buildup spans work; the
    last payment lands on the valuation date and earns no interest.
    """
    if years < 0:
        raise ValueError("years must be >= 0")
    if rate < 1e-12:  # the closed form degenerates numerically near zero
        return outlay_per_year * years
    return outlay_per_year * ((1.0 + rate) ** years - 1.0) / rate


def accumulate_buildup_debt(
    annual_outlays: list[float],
    launch_cost_total: float,
    sched: DiscountSchedule,
    start_year: float = 0.0,
) -> float:
    """Debt at the end of the buildup period.

    Outlay k (paid at the end of buildup year k+1) compounds over the
    remaining buildup years at the vintage rate; launch_cost_total is
    added at the end of the buildup without compounding.
    """
    if not annual_outlays:
        raise ValueError("need at least one buildup year")
    rate = sched.rate(start_year)
    n = len(annual_outlays)
    debt = sum(
        compound(outlay, n - (k + 1), rate) for k, outlay in enumerate(annual_outlays)
    )
    return debt + launch_cost_total


def amortize(
    debt: float,
    life: float,
    sched: DiscountSchedule,
    start_year: float = 0.0,
) -> tuple[float, float]:
    """Equal annual payment retiring `debt` over `life` years.

    Returns (annual payment, total interest).  The rate is frozen at the
    vintage year.
    """
    if debt <= 0:
        raise ValueError("debt must be positive")
    if life < 1:
        raise ValueError("life must be >= 1 year")
    rate = sched.rate(start_year)
    if rate < 1e-12:
        return debt / life, 0.0
    payment = debt * rate / (1.0 - (1.0 + rate) ** (-life))
    return payment, life * payment - debt


def specific_finance_cost(
    total_interest: float, m_p_total: float, l_p: float
) -> tuple[float, float]:
    """Interest per kg of lifetime product, raw and launch-normalized."""
    if m_p_total <= 0:
        raise ValueError("lifetime product mass must be positive")
    f = total_interest / m_p_total
    return f, f / l_p


def sep_transit_penalty(dv_fraction: float, rate: float) -> float:
    """Cost multiplier for slow electric delivery, prorated by delta-v.

    dv_fraction is the covered share of the full LLO-to-LEO slow leg.
    """
    if not 0.0 <= dv_fraction <= 1.0:
        raise ValueError(f"dv_fraction must be in [0, 1], got {dv_fraction}")
    return (1.0 + rate) ** (SEP_FULL_TRANSIT_YEARS * dv_fraction)


def finance_result(
    debt: float,
    annual_payment: float,
    total_interest: float,
    m_p_total: float,
    l_p: float,
) -> FinanceResult:
    f, xi = specific_finance_cost(total_interest, m_p_total, l_p)
    return FinanceResult(debt, annual_payment, total_interest, f, xi)
