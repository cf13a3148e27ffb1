"""Learning-curve, scale, scope, launch-cost, and market-demand evolution.

All factors are multipliers on baseline unit costs.  Cumulative
production follows the closed form of an exponentially growing rate, so
the learning factor and the launch-cost curve share one integral.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateScaleError, DomainError


@dataclass(frozen=True)
class LearningParams:
    """Progress ratio b and the cumulative baseline production s0 (kg)."""

    b: float
    s0: float

    def __post_init__(self) -> None:
        if not 0.0 < self.b <= 1.0:
            raise ValueError(f"progress ratio must be in (0, 1], got {self.b}")
        if self.s0 <= 0:
            raise ValueError("baseline cumulative production must be positive")


@dataclass(frozen=True)
class BetaSchedule:
    """Co-located industry production as a fraction of propellant output.

    Zero before `start`, rising linearly to `level` between `start` and
    `full`, constant after.
    """

    start: float = 10.0
    full: float = 15.0
    level: float = 0.3

    def at(self, t: float) -> float:
        if t <= self.start:
            return 0.0
        if t >= self.full:
            return self.level
        return self.level * (t - self.start) / (self.full - self.start)


@dataclass(frozen=True)
class ScaleParams:
    a: float = 0.6  # capacity-cost exponent
    x0: float = 1.0  # baseline production rate, kg/y
    x_max: float | None = None  # firm-level scale cap, kg/y; None = uncapped
    f_overlap: float = 0.5  # supply-chain overlap with the co-located industry
    f_firm_soe: float = 0.2  # firm-level shared-asset fraction
    beta: BetaSchedule = BetaSchedule()

    def __post_init__(self) -> None:
        if not 0.0 < self.a <= 1.0:
            raise ValueError(f"scale exponent must be in (0, 1], got {self.a}")
        if self.x0 <= 0:
            raise ValueError("baseline production rate must be positive")
        if not 0.0 <= self.f_overlap <= 1.0:
            raise ValueError("overlap fraction must be in [0, 1]")


@dataclass(frozen=True)
class LaunchModel:
    """Launch cost to LEO evolving under scale and experience effects."""

    l0: float  # $/kg at t = 0
    u0: float  # kg/y up-mass at t = 0
    s0: float  # kg cumulative launched by t = 0
    tau_l: float  # up-mass e-folding time, years (derived via fit_tau)
    a: float = 0.66
    b: float = 0.80

    def __post_init__(self) -> None:
        for name in ("l0", "u0", "s0", "tau_l"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class MarketModel:
    """Exponential demand interpolation between year 1 and year 30."""

    d1: float  # kg/y
    d30: float  # kg/y

    def __post_init__(self) -> None:
        if self.d1 <= 0 or self.d30 <= 0:
            raise ValueError("demand endpoints must be positive")

    @property
    def tau(self) -> float:
        if self.d30 == self.d1:
            return math.inf
        return 30.0 / math.log(self.d30 / self.d1)


def wright_factor(s_t: float, lp: LearningParams) -> float:
    """Unit-cost multiplier after cumulative production s_t."""
    if s_t < lp.s0:
        raise DomainError(f"cumulative production {s_t} below baseline {lp.s0}")
    return (s_t / lp.s0) ** math.log2(lp.b)


def cumulative_production(t: float, p0: float, tau: float, s0: float) -> float:
    """Integral of p0*exp(t'/tau) from 0 to t, plus the baseline stock."""
    if t < 0:
        raise ValueError("t must be >= 0")
    if math.isinf(tau):
        return p0 * t + s0
    return p0 * tau * (math.exp(t / tau) - 1.0) + s0


def eos_factor(x: float, x0: float, a: float) -> float:
    """Unit-cost multiplier at production rate x relative to baseline x0."""
    if x <= 0:
        raise ValueError("production rate must be positive")
    return (x / x0) ** (a - 1.0)


def scaled_costs(
    x_raw: float,
    omega_raw: float,
    x_props: float,
    t: float,
    sp: ScaleParams,
) -> tuple[float, float]:
    """Apply scale and scope effects to normalized hardware and labor costs.

    Hardware splits its scale effect evenly between the supply chain
    (boosted by the overlapping co-located industry, never capped) and
    the firm level (capped at x_max).  Labor carries the full exponent at
    the firm level.  Both share the firm-level scope discount.
    """
    if x_props <= 0:
        raise ValueError("propellant production rate must be positive")
    half = (sp.a - 1.0) / 2.0
    x_metals = sp.beta.at(t) * x_props
    firm_rate = min(x_props, sp.x_max) if sp.x_max is not None else x_props
    soe = 1.0 - sp.f_firm_soe * x_metals / x_props
    if soe <= 0.0:
        raise DegenerateScaleError(f"firm scope factor {soe:.4f} <= 0 at t={t}")
    supply = ((x_props + sp.f_overlap * x_metals) / sp.x0) ** half
    firm_half = (firm_rate / sp.x0) ** half
    x_out = x_raw * supply * firm_half * soe
    omega_out = omega_raw * (firm_rate / sp.x0) ** (sp.a - 1.0) * soe
    return x_out, omega_out


def fit_tau(u30: float, u0: float) -> float:
    """E-folding time that carries up-mass from u0 to u30 in 30 years."""
    if not u30 > u0 > 0:
        raise DomainError(f"need u30 > u0 > 0, got u30={u30}, u0={u0}")
    return 30.0 / math.log(u30 / u0)


def launch_cost(t: float, m: LaunchModel) -> float:
    """$/kg to LEO at time t under scale and experience effects."""
    if t < 0:
        raise ValueError("t must be >= 0")
    scale = math.exp(t / m.tau_l) ** (m.a - 1.0)
    cumulative = cumulative_production(t, m.u0, m.tau_l, m.s0)
    learning = (cumulative / m.s0) ** math.log2(m.b)
    return m.l0 * scale * learning


def market_demand(t: float, m: MarketModel) -> float:
    """kg/y demanded at time t (t=0 is year 1, t=30 hits d30 by construction)."""
    if t < 0:
        raise ValueError("t must be >= 0")
    if math.isinf(m.tau):
        return m.d1
    return m.d1 * math.exp(t / m.tau)


def implied_elasticity(m: LaunchModel, t: float) -> float:
    """Price elasticity consistent with the up-mass and cost trajectories."""
    cost = launch_cost(t, m)
    if cost >= m.l0:
        raise DomainError("launch cost did not decrease; elasticity undefined")
    upmass_ratio = math.exp(t / m.tau_l)
    return -math.log(upmass_ratio) / math.log(cost / m.l0)
