"""Cislunar transport: gear ratios, payload fractions, and use ratios.

A delivery architecture is a set of legs rooted at an origin node.  Each
leg is flown by one propulsion stage, optionally reserving propellant to
return empty to the leg's origin.  The mass gear ratio from the origin to
any reachable node is the product of the leg gear ratios along the path,
per the Tsiolkovsky rocket equation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import InfeasibleLegError, MissingDeltaVError

# Earth surface gravity used to convert Isp seconds to exhaust velocity.
# The model is calibrated against published anchors that use 9.8 exactly.
G0 = 9.8


class Node(str, Enum):
    """Locations in cislunar space."""

    EARTH = "EARTH"
    LEO = "LEO"
    GTO = "GTO"
    GEO = "GEO"
    DRO = "DRO"
    EML1 = "EML1"
    LLO = "LLO"
    LS = "LS"


@dataclass(frozen=True)
class PropulsionStage:
    """One vehicle leg's physics: specific impulse and inert mass fraction."""

    isp_s: float
    imf: float
    label: str = ""
    sep: bool = False  # slow solar-electric leg; accrues transit time

    def __post_init__(self) -> None:
        if self.isp_s <= 0:
            raise ValueError(f"isp must be positive, got {self.isp_s}")
        if not 0.0 < self.imf < 1.0:
            raise ValueError(f"imf must be in (0, 1), got {self.imf}")

    @property
    def exhaust_velocity(self) -> float:
        return G0 * self.isp_s


class DeltaVTable:
    """Delta-v (m/s) between node pairs; symmetric unless overridden.

    Entries are keyed on ordered pairs.  A lookup falls back to the
    reversed pair, so one entry covers both directions by default and an
    explicit reverse entry acts as an asymmetric override.
    """

    def __init__(self, entries: dict[tuple[Node, Node], float]):
        self._entries: dict[tuple[Node, Node], float] = {}
        for (a, b), dv in entries.items():
            if dv < 0:
                raise ValueError(f"delta-v must be >= 0, got {dv} for {a}-{b}")
            self._entries[(Node(a), Node(b))] = float(dv)

    def dv(self, origin: Node, dest: Node) -> float:
        if origin == dest:
            return 0.0
        key = (Node(origin), Node(dest))
        if key in self._entries:
            return self._entries[key]
        rev = (key[1], key[0])
        if rev in self._entries:
            return self._entries[rev]
        raise MissingDeltaVError(f"no delta-v entry for {key[0].value}-{key[1].value}")

    def has(self, origin: Node, dest: Node) -> bool:
        try:
            self.dv(origin, dest)
            return True
        except MissingDeltaVError:
            return False

    def items(self) -> dict[tuple[Node, Node], float]:
        return dict(self._entries)


@dataclass(frozen=True)
class Leg:
    """One stage flight from `origin` to `dest`.

    round_trip=True reserves propellant for the vehicle to fly back empty
    to `origin`, which inflates the inert mass fraction seen on the
    outbound burn.
    """

    origin: Node
    dest: Node
    stage: PropulsionStage
    round_trip: bool = True

    def __post_init__(self) -> None:
        if self.origin == self.dest:
            raise ValueError("leg origin and destination must differ")


@dataclass(frozen=True)
class FlightCountModel:
    """Gear ratio from a flight manifest instead of the rocket equation."""

    flights_per_delivery: int
    payload_per_flight_t: float
    delivered_payload_t: float

    def gear(self) -> float:
        if self.flights_per_delivery < 1:
            raise ValueError("flights_per_delivery must be >= 1")
        return self.flights_per_delivery * self.payload_per_flight_t / self.delivered_payload_t


@dataclass(frozen=True)
class GearResult:
    gear_mass: float
    per_leg: tuple[float, ...] = ()


def effective_imf(stage: PropulsionStage, dv_return: float) -> float:
    """Inert mass fraction inflated by the empty return trip's propellant."""
    if dv_return < 0:
        raise ValueError("dv_return must be >= 0")
    return stage.imf * math.exp(dv_return / stage.exhaust_velocity)


def leg_gear_ratio(stage: PropulsionStage, dv: float, imf_eff: float) -> float:
    """Mass at leg origin per unit mass delivered, for one leg.

    Raises InfeasibleLegError when the payload fraction is <= 0, i.e. the
    stage physically cannot fly the leg with that effective inert mass.
    """
    if dv < 0:
        raise ValueError("dv must be >= 0")
    fraction = (1.0 + imf_eff) * math.exp(-dv / stage.exhaust_velocity) - imf_eff
    if fraction <= 0.0:
        raise InfeasibleLegError(
            f"payload fraction {fraction:.4f} <= 0 for dv={dv:.0f} m/s, "
            f"isp={stage.isp_s:.0f} s, imf_eff={imf_eff:.3f}"
        )
    return 1.0 / fraction


def payload_fraction(stage: PropulsionStage, dv: float) -> float:
    """One-way payload fraction; may be <= 0 (caller decides feasibility)."""
    if dv < 0:
        raise ValueError("dv must be >= 0")
    return (1.0 + stage.imf) * math.exp(-dv / stage.exhaust_velocity) - stage.imf


def _single_leg_gear(leg: Leg, dvs: DeltaVTable) -> float:
    dv_out = dvs.dv(leg.origin, leg.dest)
    if leg.round_trip:
        dv_back = dvs.dv(leg.dest, leg.origin)
        imf_eff = effective_imf(leg.stage, dv_back)
    else:
        imf_eff = leg.stage.imf
    return leg_gear_ratio(leg.stage, dv_out, imf_eff)


@dataclass(frozen=True)
class Delivery:
    """Gear and slow-transit delta-v budget for one target node."""

    gear_mass: float
    per_leg: tuple[float, ...]
    sep_dv: float  # total delta-v flown on SEP-tagged legs along the path


@dataclass(frozen=True)
class TransportArchitecture:
    """Legs rooted at `origin`, or a fixed/flight-count gear shortcut.

    Exactly one of {legs, fixed_gear_override, flight_count} determines
    the end-to-end gear ratio.  `node_overrides` pins the gear for
    specific targets (e.g. a published crossfeed-refueled figure) without
    modeling their legs.
    """

    name: str
    origin: Node
    legs: tuple[Leg, ...] = ()
    fixed_gear_override: float | None = None
    flight_count: FlightCountModel | None = None
    node_overrides: dict[Node, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        modes = sum(
            1 for m in (self.legs, self.fixed_gear_override, self.flight_count) if m
        )
        if modes > 1:
            raise ValueError(
                f"architecture {self.name!r}: at most one of legs, "
                "fixed_gear_override, flight_count may determine the gear"
            )
        reached = {self.origin}
        for leg in self.legs:
            if leg.origin not in reached:
                raise ValueError(
                    f"architecture {self.name!r}: leg {leg.origin.value}->"
                    f"{leg.dest.value} does not chain from the origin"
                )
            if leg.dest in reached:
                raise ValueError(
                    f"architecture {self.name!r}: node {leg.dest.value} reached twice"
                )
            reached.add(leg.dest)

    def nodes(self) -> set[Node]:
        out = {self.origin} | set(self.node_overrides)
        for leg in self.legs:
            out.add(leg.dest)
        return out

    def _path_to(self, target: Node) -> list[Leg]:
        by_dest = {leg.dest: leg for leg in self.legs}
        path: list[Leg] = []
        node = target
        while node != self.origin:
            if node not in by_dest:
                raise MissingDeltaVError(
                    f"architecture {self.name!r} does not reach {node.value}"
                )
            leg = by_dest[node]
            path.append(leg)
            node = leg.origin
        path.reverse()
        return path

    def delivery(self, target: Node, dvs: DeltaVTable) -> Delivery:
        """Gear ratio and SEP delta-v from the origin to `target`.

        gear(Y -> Y) is 1 by convention.
        """
        if target == self.origin:
            return Delivery(1.0, (), 0.0)
        if target in self.node_overrides:
            return Delivery(self.node_overrides[target], (), 0.0)
        if self.fixed_gear_override is not None:
            return Delivery(self.fixed_gear_override, (), 0.0)
        if self.flight_count is not None:
            return Delivery(self.flight_count.gear(), (), 0.0)
        per_leg = []
        sep_dv = 0.0
        for leg in self._path_to(target):
            per_leg.append(_single_leg_gear(leg, dvs))
            if leg.stage.sep:
                sep_dv += dvs.dv(leg.origin, leg.dest)
        gear = math.prod(per_leg)
        return Delivery(gear, tuple(per_leg), sep_dv)

    def gear_to(self, target: Node, dvs: DeltaVTable) -> float:
        return self.delivery(target, dvs).gear_mass


def architecture_gear_ratio(arch: TransportArchitecture, dvs: DeltaVTable) -> GearResult:
    """End-to-end gear ratio over all configured legs (or the shortcut)."""
    if arch.fixed_gear_override is not None:
        return GearResult(arch.fixed_gear_override)
    if arch.flight_count is not None:
        return GearResult(arch.flight_count.gear())
    per_leg = tuple(_single_leg_gear(leg, dvs) for leg in arch.legs)
    return GearResult(math.prod(per_leg), per_leg)


def gear_ratio_on_cost(l_k: float, gear_mass_k: float, l_p: float) -> float:
    """Capital delivery cost per kg normalized by the propellant launch cost."""
    if l_p <= 0 or l_k <= 0:
        raise ValueError("launch costs must be positive")
    if gear_mass_k < 1:
        raise ValueError("gear ratio on mass must be >= 1")
    return l_k * gear_mass_k / l_p


def propellant_use_ratio(
    lunar_arch: TransportArchitecture,
    terrestrial_arch: TransportArchitecture,
    x: Node,
    dvs: DeltaVTable,
) -> float:
    """Lunar-delivery gear over terrestrial-delivery gear at node x."""
    if lunar_arch.origin != Node.LS:
        raise ValueError("lunar architecture must originate at LS")
    if terrestrial_arch.origin != Node.LEO:
        raise ValueError("terrestrial architecture must originate at LEO")
    return lunar_arch.gear_to(x, dvs) / terrestrial_arch.gear_to(x, dvs)
