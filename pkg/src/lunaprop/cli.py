"""Command-line interface: run, reproduce, sweep, dump-effective-config.

Exit codes: 0 success, 2 invalid configuration, 3 model error,
4 I/O error.  Failures also emit a one-line JSON error report on stderr
so callers can parse them.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace

from . import config as config_mod
from . import costmodel, exhibits, reports
from .config import RunConfig
from .errors import ConfigError, ModelError
from .exhibits import EXHIBITS

EXIT_CONFIG = 2
EXIT_MODEL = 3
EXIT_IO = 4

OUTDIR_ENV = "LUNAPROP_OUTDIR"


def _error(kind: str, message: str) -> None:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")


def _resolve_outdir(flag_value: str | None, cfg: RunConfig | None) -> str:
    if flag_value:
        return flag_value
    env = os.environ.get(OUTDIR_ENV)
    if env:
        return env
    return cfg.output_dir if cfg is not None else "out"


def _load(args) -> RunConfig:
    raw = {}
    if getattr(args, "config", None):
        cfg = config_mod.load_config(args.config)
        raw = {}
        # flags win on conflict; merge onto the loaded config below
        base = cfg
    else:
        base = config_mod.validate({})
    updates: dict = {}
    if getattr(args, "study", None):
        updates["study"] = args.study
        updates["variant"] = None
    if getattr(args, "variant", None):
        updates["variant"] = args.variant
    if getattr(args, "market", None):
        updates["market"] = args.market.upper()
    if getattr(args, "sep", None) is not None:
        updates["sep"] = args.sep
    if getattr(args, "years", None):
        updates["years"] = args.years
    cfg = replace(base, **updates) if updates else base
    return cfg


def cmd_run(args) -> int:
    cfg = _load(args)
    out_dir = _resolve_outdir(args.out, cfg)
    inp = config_mod.build_scenario(cfg)
    records = costmodel.run_scenario(inp)
    rs = reports.ReportSet(out_dir)
    header, rows = reports.yearly_state_rows(records)
    rs.add_csv("yearly_state.csv", header, rows)
    header, rows = reports.yearly_cost_rows(records, inp.scenario_id)
    rs.add_csv("yearly_costs.csv", header, rows)
    if args.table == "advantage":
        adv = {cfg.market: {n: costmodel.advantage_year(n, records)
                            for n in reports.NODE_ORDER}}
        header, rows = reports.advantage_rows(adv)
        rs.add_csv("advantage_years.csv", header, rows)
    if not args.no_plots:
        from . import figures

        years = [r.year for r in records]
        series = {
            node.value: [r.lunar_cost[node] for r in records]
            for node in reports.NODE_ORDER if node in records[0].lunar_cost
        }
        series["terrestrial @ LEO"] = [r.l_p for r in records]
        rs.add_plot(figures.line_chart(
            out_dir, "yearly_costs", years, series, "year of operation",
            "delivered cost ($/kg)", f"Lunar propellant cost, {inp.scenario_id}",
            logy=True,
        ))
    for path in rs.csv_files + rs.plot_files:
        print(path)
    return 0


def cmd_reproduce(args) -> int:
    out_dir = _resolve_outdir(args.out, None)
    rs = exhibits.reproduce(args.exhibit, out_dir, plots=not args.no_plots)
    for path in rs.csv_files + rs.plot_files:
        print(path)
    return 0


def _sweep_point(payload: tuple[dict, str, float]) -> tuple[float, list[list]]:
    raw, parameter, value = payload
    raw = dict(raw)
    economics = dict(raw.get("economics") or {})
    economics[parameter] = value
    raw["economics"] = economics
    raw["sweep"] = None
    cfg = config_mod.validate(raw)
    inp = config_mod.build_scenario(cfg)
    records = costmodel.run_scenario(inp)
    _, rows = reports.yearly_cost_rows(records, f"{parameter}={value:g}")
    return value, rows


def cmd_sweep(args) -> int:
    if not args.config:
        raise ConfigError("sweep requires --config with a sweep section")
    with open(args.config, encoding="utf-8") as fh:
        import yaml

        raw = yaml.safe_load(fh) or {}
    cfg = config_mod.validate(raw)
    if not cfg.sweep:
        raise ConfigError("config has no sweep section")
    parameter = cfg.sweep["parameter"]
    values = list(cfg.sweep["values"])
    out_dir = _resolve_outdir(args.out, cfg)
    payloads = [(raw, parameter, float(v)) for v in values]
    results: dict[float, list[list]] = {}
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            for value, rows in pool.map(_sweep_point, payloads):
                results[value] = rows
    else:
        for payload in payloads:
            value, rows = _sweep_point(payload)
            results[value] = rows
    header, _ = reports.yearly_cost_rows([], "x")
    all_rows = []
    for value in sorted(results):  # ordering independent of execution order
        all_rows.extend(results[value])
    rs = reports.ReportSet(out_dir)
    rs.add_csv("sweep.csv", header, all_rows)
    print(rs.csv_files[0])
    return 0


def cmd_dump(args) -> int:
    cfg = _load(args)
    sys.stdout.write(config_mod.dump_effective_config(cfg))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lunaprop",
        description="Long-run cost of lunar-derived vs Earth-launched propellant.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_model_flags=True):
        p.add_argument("--config", help="YAML run configuration")
        p.add_argument("-o", "--out", help="output directory (flag > env > config)")
        if with_model_flags:
            p.add_argument("--study", help="catalog study id (K S CD J B M BASELINE)")
            p.add_argument("--variant", help="catalog variant id (e.g. cd_curve_3)")
            p.add_argument("--market", help="OPTIMISTIC | MODERATE | PESSIMISTIC")
            sep = p.add_mutually_exclusive_group()
            sep.add_argument("--sep", dest="sep", action="store_true", default=None,
                             help="electric delivery below LLO")
            sep.add_argument("--no-sep", dest="sep", action="store_false", default=None)
            p.add_argument("--years", type=int, help="horizon, default 30")

    p_run = sub.add_parser("run", help="run one scenario and write CSV reports")
    add_common(p_run)
    p_run.add_argument("--table", choices=["advantage"],
                       help="also write the advantage-years table")
    p_run.add_argument("--no-plots", action="store_true", help="CSV only")
    p_run.set_defaults(func=cmd_run)

    p_rep = sub.add_parser("reproduce", help="regenerate a published table or figure")
    p_rep.add_argument("exhibit", help=f"one of: {', '.join(EXHIBITS)}")
    p_rep.add_argument("-o", "--out", help="output directory")
    p_rep.add_argument("--no-plots", action="store_true", help="CSV only")
    p_rep.set_defaults(func=cmd_reproduce)

    p_sw = sub.add_parser("sweep", help="run the config's parameter sweep")
    p_sw.add_argument("--config", required=False)
    p_sw.add_argument("-o", "--out")
    p_sw.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p_sw.set_defaults(func=cmd_sweep)

    p_dump = sub.add_parser("dump-effective-config",
                            help="print the fully resolved configuration")
    add_common(p_dump)
    p_dump.set_defaults(func=cmd_dump)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as err:
        _error("CONFIG_INVALID", str(err))
        return EXIT_CONFIG
    except ModelError as err:
        _error("MODEL_ERROR", str(err))
        return EXIT_MODEL
    except OSError as err:
        _error("IO_ERROR", str(err))
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
