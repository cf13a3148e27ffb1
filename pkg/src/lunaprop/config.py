"""Run configuration: schema validation and scenario assembly.

Configs are YAML mappings; unknown keys are rejected.  CLI flags map
onto the same keys and win on conflict.  `dump_effective_config`
round-trips: re-running its output reproduces the run exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any

import yaml

from . import catalog
from .costmodel import EconomicParams, ScenarioInputs, TechnologyParams, TransportSet
from .errors import ConfigError
from .finance import DiscountSchedule
from .scaling import BetaSchedule

_TOP_KEYS = {
    "study",
    "technology",
    "variant",
    "market",
    "sep",
    "years",
    "transport",
    "discount",
    "economics",
    "deltav",
    "sweep",
    "output_dir",
    "seed",
}
_TRANSPORT_KEYS = {"lunar", "terrestrial", "capital", "capital_gear_override"}
_DISCOUNT_KEYS = {"mode", "r_start", "r_end", "span"}
_ECON_KEYS = {
    "learning_b",
    "s0_capacity_years",
    "eos_a",
    "x_max_t_day",
    "f_overlap",
    "f_firm_soe",
    "beta_start",
    "beta_full",
    "beta_level",
    "r0",
    "e_r",
    "optimize_reliability",
    "learning_on_ops",
    "capital_launch_timing",
    "spares_on_transport",
}
_SWEEP_KEYS = {"parameter", "values"}
_SWEEP_PARAMETERS = {"r0", "learning_b", "eos_a", "x_max_t_day", "f_firm_soe", "beta_level"}
_TECH_KEYS = {
    "label",
    "m_k_surface_t",
    "m_k_space_t",
    "payload_capacity_t",
    "imf",
    "zeta_d",
    "zeta_f",
    "buildup_y",
    "annual_ops_musd",
    "life_y",
    "annual_product_t",
}


@dataclass(frozen=True)
class RunConfig:
    """Validated run request, still symbolic (catalog names, not objects)."""

    study: str | None = "BASELINE"
    technology: dict | None = None
    variant: str | None = None
    market: str = "OPTIMISTIC"
    sep: bool = True
    years: int = 30
    transport: dict = field(default_factory=dict)
    discount: dict | None = None
    economics: dict = field(default_factory=dict)
    deltav: dict = field(default_factory=dict)
    sweep: dict | None = None
    output_dir: str = "out"
    seed: int = 0  # reserved; the core model is deterministic


def _require_keys(mapping: dict, allowed: set[str], where: str) -> None:
    unknown = set(mapping) - allowed
    if unknown:
        raise ConfigError(f"unknown {where} keys: {', '.join(sorted(unknown))}")


def validate(raw: Any) -> RunConfig:
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a mapping")
    _require_keys(raw, _TOP_KEYS, "config")
    if "transport" in raw:
        _require_keys(raw["transport"] or {}, _TRANSPORT_KEYS, "transport")
    if raw.get("discount"):
        _require_keys(raw["discount"], _DISCOUNT_KEYS, "discount")
    if raw.get("economics"):
        _require_keys(raw["economics"], _ECON_KEYS, "economics")
    if raw.get("technology"):
        _require_keys(raw["technology"], _TECH_KEYS, "technology")
    if "sweep" in raw:
        sweep = raw["sweep"]
        if sweep is not None:
            _require_keys(sweep, _SWEEP_KEYS, "sweep")
            if not sweep.get("values"):
                raise ConfigError("sweep.values must be a non-empty list")
            if sweep.get("parameter") not in _SWEEP_PARAMETERS:
                raise ConfigError(
                    f"sweep.parameter must be one of {sorted(_SWEEP_PARAMETERS)}"
                )
    years = raw.get("years", 30)
    if not isinstance(years, int) or not 1 <= years <= 100:
        raise ConfigError("years must be an integer in [1, 100]")
    cfg = RunConfig(
        study=raw.get("study", "BASELINE" if "technology" not in raw else None),
        technology=raw.get("technology"),
        variant=raw.get("variant"),
        market=str(raw.get("market", "OPTIMISTIC")),
        sep=bool(raw.get("sep", True)),
        years=years,
        transport=dict(raw.get("transport") or {}),
        discount=raw.get("discount"),
        economics=dict(raw.get("economics") or {}),
        deltav=dict(raw.get("deltav") or {}),
        sweep=raw.get("sweep"),
        output_dir=str(raw.get("output_dir", "out")),
        seed=int(raw.get("seed", 0)),
    )
    if cfg.technology is not None and raw.get("study"):
        raise ConfigError("give either study or technology, not both")
    return cfg


def load_config(path: str) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        try:
            raw = yaml.safe_load(fh)
        except yaml.YAMLError as err:
            raise ConfigError(f"config is not valid YAML: {err}") from err
    return validate(raw)


def _economics(cfg: RunConfig, discount: DiscountSchedule) -> EconomicParams:
    eco = cfg.economics
    x_max = eco.get("x_max_t_day")
    beta = BetaSchedule(
        start=eco.get("beta_start", 10.0),
        full=eco.get("beta_full", 15.0),
        level=eco.get("beta_level", 0.3),
    )
    return EconomicParams(
        learning_b=eco.get("learning_b", 0.75),
        s0_capacity_years=eco.get("s0_capacity_years", 0.7),
        eos_a=eco.get("eos_a", 0.6),
        x_max_kg_y=None if x_max is None else x_max * 1000.0 * 365.0,
        f_overlap=eco.get("f_overlap", 0.5),
        f_firm_soe=eco.get("f_firm_soe", 0.2),
        beta=beta,
        r0=eco.get("r0", 0.78),
        e_r=eco.get("e_r", 0.5),
        optimize_reliability=eco.get("optimize_reliability", True),
        learning_on_ops=eco.get("learning_on_ops", True),
        discount=discount,
        capital_launch_timing=eco.get("capital_launch_timing", "buildup_start"),
        spares_on_transport=eco.get("spares_on_transport", True),
    )


def build_scenario(cfg: RunConfig) -> ScenarioInputs:
    """Resolve catalog names and overrides into concrete scenario inputs."""
    variant_res = None
    if cfg.variant is not None:
        variant_res = catalog.apply_variant(catalog.load_variant(cfg.variant))
        tech = variant_res.tech
    elif cfg.technology is not None:
        body = {"label": "INLINE", **cfg.technology}
        tech = catalog.load_study_text(yaml.safe_dump(body))
    else:
        tech = catalog.load_study(cfg.study or "BASELINE")

    sep = cfg.sep if variant_res is None or variant_res.sep is None else variant_res.sep

    if cfg.discount is not None:
        discount = DiscountSchedule(
            r_start=cfg.discount.get("r_start", 0.217),
            r_end=cfg.discount.get("r_end", cfg.discount.get("r_start", 0.12)),
            span=cfg.discount.get("span", 30.0),
            mode=cfg.discount.get("mode", "linear-declining"),
        )
    elif variant_res is not None and variant_res.discount is not None:
        discount = variant_res.discount
    else:
        discount = DiscountSchedule()

    econ = _economics(cfg, discount)
    if variant_res is not None:
        if variant_res.optimize_reliability is not None:
            econ = replace(econ, optimize_reliability=variant_res.optimize_reliability)
        if variant_res.r0 is not None:
            econ = replace(econ, r0=variant_res.r0)

    dvs = catalog.load_deltav(cfg.deltav or None)
    lunar_name = cfg.transport.get("lunar", "lunar_sep" if sep else "lunar_chem")
    terr_name = cfg.transport.get("terrestrial", "terrestrial_starship")
    gear_override = cfg.transport.get("capital_gear_override")
    if gear_override is None and variant_res is not None:
        gear_override = variant_res.gear_override
    if gear_override is not None:
        capital = catalog.capital_override_architecture(gear_override)
    else:
        capital = catalog.load_architecture(cfg.transport.get("capital", "capital_rll_tug"))

    transports = TransportSet(
        lunar=catalog.load_architecture(lunar_name),
        terrestrial=catalog.load_architecture(terr_name),
        capital=capital,
        dvs=dvs,
    )
    market = catalog.load_market(cfg.market)
    scenario_id = cfg.variant or (tech.label if cfg.technology else cfg.study) or "INLINE"
    return ScenarioInputs(
        tech=tech,
        econ=econ,
        launch=market.launch,
        transports=transports,
        years=cfg.years,
        scenario_id=f"{scenario_id}:{cfg.market}:{'sep' if sep else 'chem'}",
    )


def dump_effective_config(cfg: RunConfig) -> str:
    """Fully explicit YAML that re-runs to identical results."""
    eco = cfg.economics
    effective = {
        "study": cfg.study,
        "technology": cfg.technology,
        "variant": cfg.variant,
        "market": cfg.market,
        "sep": cfg.sep,
        "years": cfg.years,
        "transport": {
            "lunar": cfg.transport.get("lunar", "lunar_sep" if cfg.sep else "lunar_chem"),
            "terrestrial": cfg.transport.get("terrestrial", "terrestrial_starship"),
            "capital": cfg.transport.get("capital", "capital_rll_tug"),
            "capital_gear_override": cfg.transport.get("capital_gear_override"),
        },
        "discount": cfg.discount,
        "economics": {key: eco[key] for key in sorted(eco)},
        "deltav": cfg.deltav,
        "sweep": cfg.sweep,
        "output_dir": cfg.output_dir,
        "seed": cfg.seed,
    }
    if effective["technology"] is not None:
        effective["study"] = None
    return yaml.safe_dump(effective, sort_keys=False)
