"""Exponential cost-of-reliability model and the cost-optimal build point.

Hardware cost rates scale exponentially with as-built reliability.
Spares fabrication and spares transport both scale as 1/R in the long-run
average, so there is a reliability that minimizes total capital cost for
a given transportation rate; cheap transport favors lower reliability.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

# Search window for the optimizer.  Reliabilities below 1% are
# meaningless and the 1/R terms diverge; the upper cap stays clear of the
# exponential singularity at r_max.
SEARCH_FLOOR = 0.01
SEARCH_CEILING_MARGIN = 1e-6
GRID_STEP = 1e-3
REFINE_TOL = 1e-6

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ReliabilityParams:
    r0: float
    r_max: float = 1.0
    e_r: float = 0.5

    def __post_init__(self) -> None:
        if not 0.0 < self.r0 < self.r_max <= 1.0:
            raise ValueError(f"need 0 < r0 < r_max <= 1, got r0={self.r0}, r_max={self.r_max}")
        if not 0.0 <= self.e_r <= 1.0:
            raise ValueError(f"e_r must be in [0, 1], got {self.e_r}")


@dataclass(frozen=True)
class CapitalCostInputs:
    """Cost rates in $/kg of capital, mass in tonnes, transport in $/kg."""

    zeta_d: float
    zeta_f: float
    m_k_t: float
    t_k: float

    def __post_init__(self) -> None:
        for name in ("zeta_d", "zeta_f", "m_k_t", "t_k"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")


@dataclass(frozen=True)
class ReliabilityOptimum:
    r_opt: float
    total_cost: float
    c_r_at_opt: float


def reliability_cost_factor(r: float, p: ReliabilityParams) -> float:
    """Multiplier on hardware cost rates to build reliability r.

    Equals 1 at the baseline r0 and diverges as r approaches r_max.
    Sub-baseline builds are cheaper than baseline.
    """
    if r <= 0.0 or r >= p.r_max:
        raise DomainError(f"reliability must lie in (0, {p.r_max}), got {r}")
    exponent = (1.0 - p.e_r) * (r - p.r0) / (p.r_max - r)
    # The factor diverges at r_max; saturate instead of overflowing so the
    # optimizer can probe right up to the search ceiling.
    if exponent > 700.0:
        return math.inf
    return math.exp(exponent)


def capital_total_cost(r: float, p: ReliabilityParams, c: CapitalCostInputs) -> float:
    """Development + fabrication + transport cost ($) at reliability r.

    Fabrication is replaced at the spares rate 1/r; development is paid
    once.  The whole capital mass, spares included, rides the transport
    rate, hence the 1/r on the transport term as well.
    """
    factor = reliability_cost_factor(r, p)
    m_k_kg = c.m_k_t * 1000.0
    hardware = (c.zeta_d + c.zeta_f / r) * m_k_kg * factor
    transport = (m_k_kg / r) * c.t_k
    return hardware + transport


def optimize_reliability(p: ReliabilityParams, c: CapitalCostInputs) -> ReliabilityOptimum:
    """Global minimizer of capital_total_cost over the search window.

    A bracketing grid scan guards against local minima (unimodality is
    not proven), then golden-section refines the winning bracket.
    """
    if c.m_k_t <= 0:
        raise ValueError("capital mass must be positive")
    lo = max(SEARCH_FLOOR, 0.0)
    hi = p.r_max - SEARCH_CEILING_MARGIN

    def cost(r: float) -> float:
        return capital_total_cost(r, p, c)

    n = int(round((hi - lo) / GRID_STEP))
    grid = [lo + (hi - lo) * i / n for i in range(n + 1)]
    costs = [cost(r) for r in grid]
    i_best = min(range(len(grid)), key=costs.__getitem__)

    a = grid[max(i_best - 1, 0)]
    b = grid[min(i_best + 1, len(grid) - 1)]
    r_opt = _golden_section(cost, a, b, REFINE_TOL)
    # The endpoints can undercut the refined interior point when the
    # minimum sits on the boundary.
    best_r = min((grid[i_best], r_opt), key=cost)
    return ReliabilityOptimum(best_r, cost(best_r), reliability_cost_factor(best_r, p))


def _golden_section(f, a: float, b: float, tol: float) -> float:
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    return (a + b) / 2.0
