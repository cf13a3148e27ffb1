"""Built-in parameter sets: study columns, markets, architectures,
the delta-v table, and study-variant overlays.

Everything ships as versioned YAML inside the package; user configs may
override any entry.  The catalog is immutable after load.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from importlib import resources

import yaml

from . import scaling
from .costmodel import TechnologyParams
from .errors import ConflictingOverridesError, UnknownStudyError
from .finance import DiscountSchedule
from .transport import (
    DeltaVTable,
    FlightCountModel,
    Leg,
    Node,
    PropulsionStage,
    TransportArchitecture,
)

STUDY_IDS = ("K", "S", "CD", "J", "B", "M", "BASELINE")

# The P study published only payback ratios, no parameter column; its
# production mass ratios and capital-delivery gear appear in the phi
# table and payback computations directly.
P_STUDY_PHI = {"P_borehole": 16.1, "P_strip": 3.7}
P_STUDY_GEAR = 7.5

_VARIANT_KEYS = {
    "gear_override",
    "sep",
    "optimize_reliability",
    "discount",
    "ore_yield_mult",
    "buildup_y",
    "zeta_d_subsidy",
    "annual_product_override_t",
    "r0",
}


def _load_yaml(name: str) -> dict:
    text = resources.files("lunaprop.data").joinpath(name).read_text(encoding="utf-8")
    return yaml.safe_load(text)


def _study_from_mapping(sid: str, row: dict) -> TechnologyParams:
    return TechnologyParams(
        label=row.get("label", sid),
        m_k_surface_t=row["m_k_surface_t"],
        m_k_space_t=row["m_k_space_t"],
        payload_capacity_t=row["payload_capacity_t"],
        imf=row["imf"],
        zeta_d=row["zeta_d"],
        zeta_f=row["zeta_f"],
        buildup_y=row["buildup_y"],
        annual_ops_musd=row["annual_ops_musd"],
        life_y=row["life_y"],
        annual_product_t=row["annual_product_t"],
        provenance=dict(row.get("provenance", {})),
        phi_published=row.get("phi_published"),
        phi_mismatch=row.get("phi_mismatch", False),
    )


def load_study(study_id: str) -> TechnologyParams:
    studies = _load_yaml("studies.yaml")["studies"]
    sid = study_id.upper()
    if sid not in studies:
        raise UnknownStudyError(
            f"unknown study {study_id!r}; choose from {', '.join(STUDY_IDS)}"
        )
    return _study_from_mapping(sid, studies[sid])


def dump_study(tech: TechnologyParams) -> str:
    """Serialize a study to the catalog's YAML shape (round-trips)."""
    row = {
        "label": tech.label,
        "m_k_surface_t": tech.m_k_surface_t,
        "m_k_space_t": tech.m_k_space_t,
        "payload_capacity_t": tech.payload_capacity_t,
        "imf": tech.imf,
        "zeta_d": tech.zeta_d,
        "zeta_f": tech.zeta_f,
        "buildup_y": tech.buildup_y,
        "annual_ops_musd": tech.annual_ops_musd,
        "life_y": tech.life_y,
        "annual_product_t": tech.annual_product_t,
        "phi_published": tech.phi_published,
        "phi_mismatch": tech.phi_mismatch,
        "provenance": dict(tech.provenance),
    }
    return yaml.safe_dump(row, sort_keys=True)


def load_study_text(text: str) -> TechnologyParams:
    row = yaml.safe_load(text)
    return _study_from_mapping(row.get("label", "INLINE"), row)


def load_deltav(overrides: dict[str, float] | None = None) -> DeltaVTable:
    raw = _load_yaml("deltav.yaml")["entries"]
    if overrides:
        raw = {**raw, **overrides}
    entries = {}
    for key, dv in raw.items():
        a, b = key.split("-")
        entries[(Node(a), Node(b))] = float(dv)
    return DeltaVTable(entries)


def load_stages() -> dict[str, PropulsionStage]:
    raw = _load_yaml("architectures.yaml")["stages"]
    return {
        name: PropulsionStage(
            isp_s=row["isp_s"],
            imf=row["imf"],
            label=name,
            sep=row.get("sep", False),
        )
        for name, row in raw.items()
    }


def load_architecture(name: str) -> TransportArchitecture:
    data = _load_yaml("architectures.yaml")
    if name not in data["architectures"]:
        raise UnknownStudyError(f"unknown architecture {name!r}")
    stages = load_stages()
    row = data["architectures"][name]
    legs = tuple(
        Leg(
            origin=Node(spec["from"]),
            dest=Node(spec["to"]),
            stage=stages[spec["stage"]],
            round_trip=spec.get("round_trip", True),
        )
        for spec in row.get("legs", ())
    )
    flight = None
    if "flight_count" in row:
        fc = row["flight_count"]
        flight = FlightCountModel(
            flights_per_delivery=fc["flights_per_delivery"],
            payload_per_flight_t=fc["payload_per_flight_t"],
            delivered_payload_t=fc["delivered_payload_t"],
        )
    overrides = {Node(k): float(v) for k, v in row.get("node_overrides", {}).items()}
    return TransportArchitecture(
        name=name,
        origin=Node(row["origin"]),
        legs=legs,
        fixed_gear_override=row.get("fixed_gear_override"),
        flight_count=flight,
        node_overrides=overrides,
    )


@dataclass(frozen=True)
class MarketScenario:
    name: str
    u30_kg_y: float
    launch: scaling.LaunchModel

    @property
    def l30(self) -> float:
        return scaling.launch_cost(30.0, self.launch)


def load_market(name: str) -> MarketScenario:
    data = _load_yaml("markets.yaml")
    launch_row = data["launch"]
    key = name.upper()
    if key not in data["scenarios"]:
        raise UnknownStudyError(
            f"unknown market {name!r}; choose from {', '.join(data['scenarios'])}"
        )
    u0 = launch_row["u0_t_y"] * 1000.0
    u30 = data["scenarios"][key]["u30_t_y"] * 1000.0
    model = scaling.LaunchModel(
        l0=launch_row["l0"],
        u0=u0,
        s0=launch_row["s0_t"] * 1000.0,
        tau_l=scaling.fit_tau(u30, u0),
        a=launch_row["a"],
        b=launch_row["b"],
    )
    return MarketScenario(name=key, u30_kg_y=u30, launch=model)


def market_names() -> tuple[str, ...]:
    return tuple(_load_yaml("markets.yaml")["scenarios"])


@dataclass(frozen=True)
class StudyVariant:
    name: str
    base: str
    overrides: dict = field(default_factory=dict)


def load_variant(name: str) -> StudyVariant:
    data = _load_yaml("variants.yaml")["variants"]
    if name not in data:
        raise UnknownStudyError(f"unknown variant {name!r}")
    row = data[name]
    return StudyVariant(name=name, base=row["base"], overrides=dict(row["overrides"]))


def variant_names() -> tuple[str, ...]:
    return tuple(_load_yaml("variants.yaml")["variants"])


def compose_overrides(*override_sets: dict) -> dict:
    """Merge override dicts; identical values commute, clashes are errors."""
    merged: dict = {}
    for overrides in override_sets:
        for key, value in overrides.items():
            if key not in _VARIANT_KEYS:
                raise ConflictingOverridesError(f"unknown override key {key!r}")
            if key in merged and merged[key] != value:
                raise ConflictingOverridesError(
                    f"override {key!r} set twice with different values "
                    f"({merged[key]!r} vs {value!r})"
                )
            merged[key] = value
    return merged


@dataclass(frozen=True)
class VariantResolution:
    """Materialized variant: adjusted technology plus run-config knobs."""

    tech: TechnologyParams
    sep: bool | None = None
    optimize_reliability: bool | None = None
    discount: DiscountSchedule | None = None
    gear_override: float | None = None
    r0: float | None = None


def apply_variant(variant: StudyVariant) -> VariantResolution:
    overrides = compose_overrides(variant.overrides)
    tech = load_study(variant.base)
    if "ore_yield_mult" in overrides:
        tech = replace(
            tech, annual_product_t=tech.annual_product_t * overrides["ore_yield_mult"]
        )
    if "annual_product_override_t" in overrides:
        tech = replace(tech, annual_product_t=overrides["annual_product_override_t"])
    if "buildup_y" in overrides:
        tech = replace(tech, buildup_y=overrides["buildup_y"])
    if "zeta_d_subsidy" in overrides:
        frac = overrides["zeta_d_subsidy"]
        if not 0.0 <= frac <= 1.0:
            raise ConflictingOverridesError("zeta_d_subsidy must be in [0, 1]")
        tech = replace(tech, zeta_d=tech.zeta_d * (1.0 - frac))
    discount = None
    if "discount" in overrides:
        row = overrides["discount"]
        discount = DiscountSchedule(
            r_start=row["r_start"],
            r_end=row.get("r_end", row["r_start"]),
            mode=row.get("mode", "constant"),
        )
    return VariantResolution(
        tech=tech,
        sep=overrides.get("sep"),
        optimize_reliability=overrides.get("optimize_reliability"),
        discount=discount,
        gear_override=overrides.get("gear_override"),
        r0=overrides.get("r0"),
    )


def capital_override_architecture(gear: float) -> TransportArchitecture:
    """Capital delivery pinned at a published gear-on-cost figure."""
    if gear < 1 or not math.isfinite(gear):
        raise ValueError("gear override must be finite and >= 1")
    return TransportArchitecture(
        name=f"capital_override_{gear:g}",
        origin=Node.LEO,
        fixed_gear_override=float(gear),
    )
