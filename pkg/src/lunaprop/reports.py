"""CSV emission.  The CSV files are the contract: comma-separated,
header row, LF line endings, UTF-8, numbers at 6 significant digits.
Identical runs produce byte-identical files.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .costmodel import YearlyCostRecord
from .transport import Node

NODE_ORDER = (Node.LS, Node.LLO, Node.EML1, Node.DRO, Node.GEO, Node.GTO, Node.LEO)


def fmt(value) -> str:
    if value is None:
        return "never"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def write_csv(path: str, header: list[str], rows: list[list]) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(fmt(v) for v in row) + "\n")


@dataclass
class ReportSet:
    """Paths of everything one command wrote, for logging and tests."""

    out_dir: str
    csv_files: list[str] = field(default_factory=list)
    plot_files: list[str] = field(default_factory=list)

    def add_csv(self, name: str, header: list[str], rows: list[list]) -> str:
        path = os.path.join(self.out_dir, name)
        write_csv(path, header, rows)
        self.csv_files.append(path)
        return path

    def add_plot(self, path: str) -> None:
        self.plot_files.append(path)


def yearly_state_rows(records: list[YearlyCostRecord]) -> tuple[list[str], list[list]]:
    header = ["year", "launch_cost_usd_kg", "r_opt", "phi", "x", "omega", "xi", "chi", "g", "psi0"]
    rows = [
        [r.year, r.l_p, r.r_opt, r.state.phi, r.state.x, r.state.omega,
         r.state.xi, r.state.chi, r.state.g, r.state.psi0]
        for r in records
    ]
    return header, rows


def yearly_cost_rows(
    records: list[YearlyCostRecord], scenario: str
) -> tuple[list[str], list[list]]:
    header = [
        "scenario", "year", "node", "lunar_cost_usd_kg",
        "terrestrial_cost_usd_kg", "cost_ratio", "use_ratio",
    ]
    rows = []
    for rec in records:
        for node in NODE_ORDER:
            if node not in rec.state.psi:
                continue
            rows.append([
                scenario, rec.year, node.value, rec.lunar_cost[node],
                rec.terrestrial_cost[node], rec.state.psi[node], rec.state.gamma[node],
            ])
    return header, rows


def advantage_rows(
    per_market: dict[str, dict[Node, int | None]]
) -> tuple[list[str], list[list]]:
    markets = list(per_market)
    header = ["node"] + markets
    rows = []
    for node in NODE_ORDER:
        rows.append([node.value] + [per_market[m].get(node) for m in markets])
    return header, rows
