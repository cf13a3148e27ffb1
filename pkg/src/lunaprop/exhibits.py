"""Canonical runs behind every published table and figure.

Each exhibit writes its data as CSV (the contract) and, optionally, an
SVG companion plot.  Tolerances live in the test suite as comparison
rules; nothing here bakes expected values into the outputs.
"""

from __future__ import annotations

import math
from dataclasses import replace

from . import catalog, config, costmodel, figures, finance, reliability, reports
from .costmodel import ScenarioInputs
from .errors import UnknownExhibitError
from .reports import NODE_ORDER, ReportSet
from .transport import Node

# Elasticity-table regime construction: the ratio table was evidently
# generated with a flat finance treatment (capital launch at buildup end,
# no spares stream on the transport term) and regime-specific absolute
# scales; the pairs below reproduce all published cells.  x is the raw
# hardware cost rate over the launch cost; the capital gear is rescaled
# to x * ratio with the leg physics kept live for IMF/Isp sensitivities.
ELASTICITY_REGIMES: dict[float, float] = {0.02: 700.0, 1.0: 7.5, 50.0: 11.0}

FIG1_TRANSPORT_RATES = (1e2, 1e3, 1e4, 1e5)  # $/kg, spanning cheap to costly
RELIABILITY_SWEEP_R0 = (0.10, 0.25, 0.40, 0.55, 0.70, 0.85)
STUDY_SET = ("K", "S", "CD5", "J", "B", "M")


def _scenario(**raw) -> ScenarioInputs:
    return config.build_scenario(config.validate(raw))


def _psi0(inp: ScenarioInputs) -> list[float]:
    return [rec.state.psi0 for rec in costmodel.run_scenario(inp)]


def _thresholds(records, nodes=(Node.DRO, Node.GTO, Node.LEO)) -> dict[str, list[float]]:
    return {
        f"1/use_ratio_{n.value}": [1.0 / rec.state.gamma[n] for rec in records]
        for n in nodes
    }


def _study_scenario(study: str, discount: dict | None, market="OPTIMISTIC") -> ScenarioInputs:
    raw: dict = {"market": market, "sep": True}
    if study == "CD5":
        raw["variant"] = "cd_curve_5"
    else:
        raw["study"] = study
    if discount is not None:
        raw["discount"] = discount
    return _scenario(**raw)


def leo_cost_shares(rec, rate: float) -> tuple[float, float, float]:
    """(financing, capital, labor) shares of the cost delivered at LEO.

    The slow-transit surcharge is discount-rate cost, so it counts as
    financing.
    """
    pen = finance.sep_transit_penalty(1.0, rate)
    total = rec.state.psi0 * pen
    fin = rec.state.xi * pen + (pen - 1.0) * (rec.state.chi + rec.state.omega)
    return fin / total, rec.state.chi / total, rec.state.omega / total


def table1(out_dir: str, plots: bool = True) -> ReportSet:
    """Years to absolute advantage, baseline + SEP, three market sizes."""
    rs = ReportSet(out_dir)
    per_market: dict[str, dict[Node, int | None]] = {}
    for market in catalog.market_names():
        inp = _scenario(study="BASELINE", market=market, sep=True)
        recs = costmodel.run_scenario(inp)
        per_market[market] = {
            n: costmodel.advantage_year(n, recs) for n in NODE_ORDER
        }
    header, rows = reports.advantage_rows(per_market)
    rs.add_csv("table1.csv", header, rows)
    if plots:
        values = [[(per_market[m][n] or 31) for m in per_market] for n in NODE_ORDER]
        rs.add_plot(figures.table_heat(
            out_dir, "table1", [n.value for n in NODE_ORDER], list(per_market),
            values, "Years to lunar absolute advantage",
        ))
    return rs


def table2(out_dir: str, plots: bool = True) -> ReportSet:
    """Production mass ratio per study, computed vs published."""
    rs = ReportSet(out_dir)
    rows = []
    for sid in catalog.STUDY_IDS:
        tech = catalog.load_study(sid)
        rows.append([sid, tech.phi, tech.phi_published, tech.phi_mismatch])
    for name, phi in catalog.P_STUDY_PHI.items():
        rows.append([name, None, phi, False])
    rs.add_csv("table2.csv", ["study", "phi_model", "phi_published", "mismatch_flag"], rows)
    if plots:
        labels = [r[0] for r in rows]
        vals = [[r[1] if r[1] is not None else r[2] for r in rows]]
        rs.add_plot(figures.table_heat(out_dir, "table2", ["phi"], labels,
                                       list(map(list, zip(*vals))), "Production mass ratio"))
    return rs


def elasticity_regime_scenario(ratio: float, x_scale: float | None = None) -> ScenarioInputs:
    """Baseline rescaled to one gear-to-hardware cost regime."""
    if x_scale is None:
        x_scale = ELASTICITY_REGIMES[ratio]
    inp = _scenario(study="BASELINE", market="OPTIMISTIC", sep=True)
    econ = replace(inp.econ, capital_launch_timing="buildup_end", spares_on_transport=False)
    zeta_total = inp.tech.zeta_d + inp.tech.zeta_f
    k = x_scale * inp.launch.l0 / zeta_total
    tech = replace(inp.tech, zeta_d=inp.tech.zeta_d * k, zeta_f=inp.tech.zeta_f * k)
    scaled = replace(inp, tech=tech, econ=econ)
    return costmodel.with_capital_gear_target(scaled, ratio * x_scale)


def elasticity_table() -> dict[float, dict[str, float]]:
    out: dict[float, dict[str, float]] = {}
    for ratio in ELASTICITY_REGIMES:
        inp = elasticity_regime_scenario(ratio)
        out[ratio] = {p: costmodel.elasticity(inp, p) for p in costmodel.ELASTICITY_PARAMS}
    return out


def table3(out_dir: str, plots: bool = True) -> ReportSet:
    rs = ReportSet(out_dir)
    table = elasticity_table()
    header = ["g_over_x"] + list(costmodel.ELASTICITY_PARAMS)
    rows = [[ratio] + [table[ratio][p] for p in costmodel.ELASTICITY_PARAMS]
            for ratio in table]
    rs.add_csv("table3.csv", header, rows)
    if plots:
        rs.add_plot(figures.table_heat(
            out_dir, "table3", [f"G/x={r:g}" for r in table],
            list(costmodel.ELASTICITY_PARAMS),
            [[table[r][p] for p in costmodel.ELASTICITY_PARAMS] for r in table],
            "Cost-ratio elasticities",
        ))
    return rs


def _fig1_inputs() -> tuple:
    tech = catalog.load_study("BASELINE")
    params = reliability.ReliabilityParams(r0=0.78)
    return tech, params


def fig1(out_dir: str, plots: bool = True) -> ReportSet:
    """Capital cost vs reliability for four transportation rates."""
    rs = ReportSet(out_dir)
    tech, params = _fig1_inputs()
    grid = [0.01 + i * (0.995 - 0.01) / 400 for i in range(401)]
    header = ["r"] + [f"cost_musd_tk_{tk:g}" for tk in FIG1_TRANSPORT_RATES]
    rows = [[r] for r in grid]
    series = {}
    optima = []
    for tk in FIG1_TRANSPORT_RATES:
        inputs = reliability.CapitalCostInputs(tech.zeta_d, tech.zeta_f, tech.m_k_total_t, tk)
        costs = [reliability.capital_total_cost(r, params, inputs) / 1e6 for r in grid]
        for row, c in zip(rows, costs):
            row.append(c)
        series[f"T_K={tk:g} $/kg"] = costs
        opt = reliability.optimize_reliability(params, inputs)
        optima.append([tk, opt.r_opt, opt.total_cost / 1e6, opt.c_r_at_opt])
    rs.add_csv("fig1.csv", header, rows)
    rs.add_csv("fig1_optima.csv", ["t_k_usd_kg", "r_opt", "cost_musd", "c_r_at_opt"], optima)
    if plots:
        rs.add_plot(figures.line_chart(
            out_dir, "fig1", grid, series, "as-built reliability",
            "capital + transport cost (M$)", "Reliability trade for the baseline plant",
            logy=True,
        ))
    return rs


def _tk_grid() -> list[float]:
    return [10 ** (2 + 4 * i / 60) for i in range(61)]


def fig2(out_dir: str, plots: bool = True) -> ReportSet:
    rs = ReportSet(out_dir)
    tech, params = _fig1_inputs()
    tks = _tk_grid()
    rows = []
    ropts = []
    for tk in tks:
        inputs = reliability.CapitalCostInputs(tech.zeta_d, tech.zeta_f, tech.m_k_total_t, tk)
        opt = reliability.optimize_reliability(params, inputs)
        rows.append([tk, opt.r_opt])
        ropts.append(opt.r_opt)
    rs.add_csv("fig2.csv", ["t_k_usd_kg", "r_opt"], rows)
    if plots:
        rs.add_plot(figures.semilogx_chart(
            out_dir, "fig2", tks, {"r_opt": ropts}, "transportation rate ($/kg)",
            "cost-optimal reliability", "Optimal reliability vs transport rate",
        ))
    return rs


def fig3(out_dir: str, plots: bool = True) -> ReportSet:
    rs = ReportSet(out_dir)
    tech, params = _fig1_inputs()
    tks = _tk_grid()
    rows = []
    factors = []
    for tk in tks:
        inputs = reliability.CapitalCostInputs(tech.zeta_d, tech.zeta_f, tech.m_k_total_t, tk)
        opt = reliability.optimize_reliability(params, inputs)
        rows.append([tk, opt.c_r_at_opt])
        factors.append(opt.c_r_at_opt)
    rs.add_csv("fig3.csv", ["t_k_usd_kg", "c_r_at_opt"], rows)
    if plots:
        rs.add_plot(figures.semilogx_chart(
            out_dir, "fig3", tks, {"c_R(r_opt)": factors}, "transportation rate ($/kg)",
            "reliability cost factor at optimum", "Optimized reliability cost factor",
        ))
    return rs


def _interp_gamma_curve(sep: bool, dvs) -> tuple[list[float], list[float]]:
    """Use ratio along the delivery chain, interpolated on delta-v from LEO."""
    lunar = catalog.load_architecture("lunar_sep" if sep else "lunar_chem")
    stages = catalog.load_stages()
    ss = stages["starship"]
    otv = stages["otv_sep" if sep else "otv_chem"]
    rll2 = stages["rll_sep" if sep else "rll_chem"]
    rll = stages["rll_chem"]
    from . import transport as tp

    d_leo_eml1 = dvs.dv(Node.LEO, Node.EML1)
    d_leo_llo = dvs.dv(Node.LEO, Node.LLO)
    d_leo_ls = d_leo_llo + dvs.dv(Node.LS, Node.LLO)
    dv_eml1_leo = dvs.dv(Node.EML1, Node.LEO)
    dv_llo_eml1 = dvs.dv(Node.LLO, Node.EML1)
    dv_ls_llo = dvs.dv(Node.LS, Node.LLO)

    def leg_gear(stage, dv):
        return tp.leg_gear_ratio(stage, dv, tp.effective_imf(stage, dv))

    # Beyond LLO a single reusable heavy-lift round trip is infeasible;
    # surface delivery needs refueling, pinned at the published gear of
    # 10.  Interpolate that last stretch geometrically.
    ls_gear = 10.0
    gear_at_llo = leg_gear(ss, d_leo_llo)

    xs, gammas = [], []
    steps = 200
    for i in range(steps + 1):
        d = d_leo_ls * i / steps
        if d <= 1.0:
            terr = 1.0
        elif d <= d_leo_llo:
            terr = leg_gear(ss, d)
        else:
            frac = (d - d_leo_llo) / (d_leo_ls - d_leo_llo)
            terr = gear_at_llo * (ls_gear / gear_at_llo) ** frac
        if d >= d_leo_ls - 1.0:
            lun = 1.0
        elif d >= d_leo_llo:
            lun = leg_gear(rll, dv_ls_llo * (d_leo_ls - d) / (d_leo_ls - d_leo_llo))
        elif d >= d_leo_eml1:
            lun = leg_gear(rll, dv_ls_llo) * leg_gear(
                rll2, dv_llo_eml1 * (d_leo_llo - d) / (d_leo_llo - d_leo_eml1)
            )
        else:
            lun = (leg_gear(rll, dv_ls_llo) * leg_gear(rll2, dv_llo_eml1)
                   * leg_gear(otv, dv_eml1_leo * (d_leo_eml1 - d) / d_leo_eml1))
        xs.append(d)
        gammas.append(lun / terr)
    return xs, gammas


def fig4(out_dir: str, plots: bool = True) -> ReportSet:
    """Use ratio vs delta-v from LEO for both architecture pairs."""
    rs = ReportSet(out_dir)
    dvs = catalog.load_deltav()
    xs, g_chem = _interp_gamma_curve(False, dvs)
    _, g_sep = _interp_gamma_curve(True, dvs)
    rows = [[x, a, b] for x, a, b in zip(xs, g_chem, g_sep)]
    rs.add_csv("fig4.csv", ["dv_from_leo_m_s", "use_ratio_chemical", "use_ratio_sep"], rows)

    lunar_sep = catalog.load_architecture("lunar_sep")
    lunar_chem = catalog.load_architecture("lunar_chem")
    terr = catalog.load_architecture("terrestrial_starship")
    node_rows = []
    for node in NODE_ORDER:
        d = 0.0 if node == Node.LEO else dvs.dv(Node.LEO, node)
        gc = lunar_chem.gear_to(node, dvs) / terr.gear_to(node, dvs)
        gs = lunar_sep.gear_to(node, dvs) / terr.gear_to(node, dvs)
        node_rows.append([node.value, d, gc, gs])
    rs.add_csv("fig4_nodes.csv",
               ["node", "dv_from_leo_m_s", "use_ratio_chemical", "use_ratio_sep"], node_rows)
    if plots:
        rs.add_plot(figures.line_chart(
            out_dir, "fig4", xs,
            {"chemical tug": g_chem, "electric tug": g_sep},
            "delta-v from LEO (m/s)", "use ratio (lunar gear / terrestrial gear)",
            "Delivery cost factor across cislunar space", logy=True,
        ))
    return rs


def _cost_map_exhibit(name: str, out_dir: str, plots: bool,
                      runs: dict[str, ScenarioInputs]) -> ReportSet:
    rs = ReportSet(out_dir)
    all_rows = []
    series = {}
    years = None
    for label, inp in runs.items():
        recs = costmodel.run_scenario(inp)
        _, rows = reports.yearly_cost_rows(recs, label)
        all_rows.extend(rows)
        series[label] = [r.state.psi0 for r in recs]
        years = [r.year for r in recs]
    header, _ = reports.yearly_cost_rows([], "x")
    rs.add_csv(f"{name}.csv", header, all_rows)
    if plots:
        rs.add_plot(figures.line_chart(
            out_dir, name, years, series, "year of operation",
            "pre-delivery cost ratio", f"{name}: lunar vs terrestrial cost ratio",
            logy=True,
        ))
    return rs


def fig5(out_dir: str, plots: bool = True) -> ReportSet:
    inp = _scenario(study="BASELINE", market="OPTIMISTIC", sep=False)
    return _cost_map_exhibit("fig5", out_dir, plots, {"baseline_chem": inp})


def fig6(out_dir: str, plots: bool = True) -> ReportSet:
    inp = _scenario(study="BASELINE", market="OPTIMISTIC", sep=True)
    return _cost_map_exhibit("fig6", out_dir, plots, {"baseline_sep": inp})


def fig7(out_dir: str, plots: bool = True) -> ReportSet:
    """Cost shares (labor, capital, financing) at LEO, years 1 and 30."""
    rs = ReportSet(out_dir)
    inp = _scenario(study="BASELINE", market="OPTIMISTIC", sep=True)
    recs = costmodel.run_scenario(inp)
    rows = []
    for rec in recs:
        rate = inp.econ.discount.rate(float(rec.year - 1))
        fin, cap, lab = leo_cost_shares(rec, rate)
        rows.append([rec.year, fin, cap, lab])
    rs.add_csv("fig7.csv", ["year", "financing_share", "capital_share", "labor_share"], rows)
    if plots:
        first, last = rows[0], rows[-1]
        rs.add_plot(figures.stacked_shares(
            out_dir, "fig7", ["year 1", "year 30"],
            {
                "labor": [first[3], last[3]],
                "capital": [first[2], last[2]],
                "financing": [first[1], last[1]],
            },
            "Cost composition of propellant delivered to LEO",
        ))
    return rs


def fig8(out_dir: str, plots: bool = True) -> ReportSet:
    runs = {
        "moderate": _scenario(study="BASELINE", market="MODERATE", sep=True),
        "pessimistic": _scenario(study="BASELINE", market="PESSIMISTIC", sep=True),
    }
    return _cost_map_exhibit("fig8", out_dir, plots, runs)


def _psi0_exhibit(name, out_dir, plots, runs: dict[str, ScenarioInputs],
                  threshold_source: str | None = None) -> ReportSet:
    rs = ReportSet(out_dir)
    series: dict[str, list[float]] = {}
    years = None
    thresholds: dict[str, list[float]] = {}
    for label, inp in runs.items():
        recs = costmodel.run_scenario(inp)
        series[label] = [r.state.psi0 for r in recs]
        years = [r.year for r in recs]
        if threshold_source == label or (threshold_source is None and not thresholds):
            thresholds = _thresholds(recs)
    header = ["year"] + list(series) + [f"{k} (threshold)" for k in thresholds]
    rows = []
    for i, y in enumerate(years):
        rows.append([y] + [series[s][i] for s in series]
                    + [thresholds[k][i] for k in thresholds])
    rs.add_csv(f"{name}.csv", header, rows)
    if plots:
        plot_series = dict(series)
        for k, v in thresholds.items():
            plot_series[f"{k} (threshold)"] = v
        rs.add_plot(figures.line_chart(
            out_dir, name, years, plot_series, "year of operation",
            "pre-delivery cost ratio", name, logy=True,
        ))
    return rs


def fig9(out_dir: str, plots: bool = True) -> ReportSet:
    """Economic-parameter sensitivity of the cost-ratio trajectory."""
    base = {"study": "BASELINE", "market": "OPTIMISTIC", "sep": True}
    variants = {
        "baseline": {},
        "xmax_10_t_day": {"x_max_t_day": 10.0},
        "xmax_20_t_day": {"x_max_t_day": 20.0},
        "no_scope_beta_0": {"beta_level": 0.0},
        "full_scope_beta_1": {"beta_level": 1.0},
        "eos_a_0.8": {"eos_a": 0.8},
        "learning_b_0.70": {"learning_b": 0.70},
        "learning_b_0.80": {"learning_b": 0.80},
    }
    runs = {
        label: _scenario(**{**base, "economics": econ})
        for label, econ in variants.items()
    }
    return _psi0_exhibit("fig9", out_dir, plots, runs, threshold_source="baseline")


def fig10(out_dir: str, plots: bool = True) -> ReportSet:
    """Technology-parameter sensitivity, one knob at a time (+/-25%)."""
    base = _scenario(study="BASELINE", market="OPTIMISTIC", sep=True)
    runs: dict[str, ScenarioInputs] = {"baseline": base}
    for name, factor in (("+25%", 1.25), ("-25%", 0.8)):
        t = base.tech
        runs[f"product{name}"] = replace(
            base, tech=replace(t, annual_product_t=t.annual_product_t * factor))
        runs[f"capital_mass{name}"] = replace(
            base, tech=replace(t, m_k_surface_t=t.m_k_surface_t * factor,
                               m_k_space_t=t.m_k_space_t * factor))
        runs[f"hardware_cost{name}"] = replace(
            base, tech=replace(t, zeta_d=t.zeta_d * factor, zeta_f=t.zeta_f * factor))
    return _psi0_exhibit("fig10", out_dir, plots, runs, threshold_source="baseline")


def fig11(out_dir: str, plots: bool = True) -> ReportSet:
    runs = {
        v: _scenario(variant=v, market="OPTIMISTIC")
        for v in ("cd_curve_1", "cd_curve_2", "cd_curve_3", "cd_curve_4", "cd_curve_5")
    }
    return _psi0_exhibit("fig11", out_dir, plots, runs, threshold_source="cd_curve_3")


def fig12(out_dir: str, plots: bool = True) -> ReportSet:
    runs = {
        "J": _scenario(study="J", market="OPTIMISTIC", sep=True),
        "B": _scenario(study="B", market="OPTIMISTIC", sep=True),
    }
    return _psi0_exhibit("fig12", out_dir, plots, runs, threshold_source="J")


def fig13(out_dir: str, plots: bool = True) -> ReportSet:
    discount = {"mode": "constant", "r_start": 0.272}
    runs = {s: _study_scenario(s, discount) for s in STUDY_SET}
    return _psi0_exhibit("fig13", out_dir, plots, runs, threshold_source="S")


def fig14(out_dir: str, plots: bool = True) -> ReportSet:
    discount = {"mode": "constant", "r_start": 0.12}
    runs = {}
    for market in ("OPTIMISTIC", "PESSIMISTIC"):
        runs[f"CD5_{market.lower()}"] = _study_scenario("CD5", discount, market)
        runs[f"S_{market.lower()}"] = _study_scenario("S", discount, market)
    return _psi0_exhibit("fig14", out_dir, plots, runs,
                         threshold_source="S_optimistic")


def fig15(out_dir: str, plots: bool = True) -> ReportSet:
    discount = {"mode": "constant", "r_start": 0.12}
    runs = {s: _study_scenario(s, discount) for s in STUDY_SET}
    return _psi0_exhibit("fig15", out_dir, plots, runs, threshold_source="S")


def fig16(out_dir: str, plots: bool = True) -> ReportSet:
    """Baseline-reliability sweep for the strip-mining and tent cases."""
    discount = {"mode": "constant", "r_start": 0.12}
    runs = {}
    for r0 in RELIABILITY_SWEEP_R0:
        for study in ("CD5", "S"):
            inp = _study_scenario(study, discount)
            runs[f"{study}_r0_{r0:.2f}"] = replace(
                inp, econ=replace(inp.econ, r0=r0))
    return _psi0_exhibit("fig16", out_dir, plots, runs,
                         threshold_source=f"S_r0_{RELIABILITY_SWEEP_R0[0]:.2f}")


EXHIBITS = {
    "table1": table1, "table2": table2, "table3": table3,
    "fig1": fig1, "fig2": fig2, "fig3": fig3, "fig4": fig4, "fig5": fig5,
    "fig6": fig6, "fig7": fig7, "fig8": fig8, "fig9": fig9, "fig10": fig10,
    "fig11": fig11, "fig12": fig12, "fig13": fig13, "fig14": fig14,
    "fig15": fig15, "fig16": fig16,
}


def reproduce(exhibit_id: str, out_dir: str, plots: bool = True) -> ReportSet:
    key = exhibit_id.lower()
    if key not in EXHIBITS:
        raise UnknownExhibitError(
            f"unknown exhibit {exhibit_id!r}; choose from {', '.join(EXHIBITS)}"
        )
    return EXHIBITS[key](out_dir, plots)
