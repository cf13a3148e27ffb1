"""Vector-graphics rendering for the report exhibits.

Plots are companions to the CSVs, never the contract; acceptance rests
on the numbers.  Everything renders through the Agg backend to SVG.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def _save(fig, out_dir: str, name: str) -> str:
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, f"{name}.svg")
    fig.savefig(path, format="svg", bbox_inches="tight")
    plt.close(fig)
    return path


def line_chart(
    out_dir: str,
    name: str,
    x,
    series: dict[str, list[float]],
    xlabel: str,
    ylabel: str,
    title: str,
    logy: bool = False,
    hlines: dict[str, float] | None = None,
) -> str:
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for label, ys in series.items():
        style = "--" if label.endswith("(threshold)") else "-"
        ax.plot(x, ys, style, label=label, linewidth=1.4)
    if hlines:
        for label, y in hlines.items():
            ax.axhline(y, linestyle=":", color="gray", linewidth=1.0)
            ax.annotate(label, (x[-1], y), fontsize=7, color="gray",
                        va="bottom", ha="right")
    if logy:
        ax.set_yscale("log")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title, fontsize=10)
    if len(series) > 1:
        ax.legend(fontsize=7, loc="best")
    ax.grid(True, alpha=0.3)
    return _save(fig, out_dir, name)


def loglog_chart(out_dir, name, x, series, xlabel, ylabel, title) -> str:
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for label, ys in series.items():
        ax.plot(x, ys, label=label, linewidth=1.4)
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title, fontsize=10)
    if len(series) > 1:
        ax.legend(fontsize=7)
    ax.grid(True, which="both", alpha=0.3)
    return _save(fig, out_dir, name)


def semilogx_chart(out_dir, name, x, series, xlabel, ylabel, title) -> str:
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for label, ys in series.items():
        ax.plot(x, ys, label=label, linewidth=1.4)
    ax.set_xscale("log")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title, fontsize=10)
    if len(series) > 1:
        ax.legend(fontsize=7)
    ax.grid(True, which="both", alpha=0.3)
    return _save(fig, out_dir, name)


def stacked_shares(out_dir, name, labels, groups: dict[str, list[float]], title) -> str:
    fig, ax = plt.subplots(figsize=(5, 4.5))
    bottoms = [0.0] * len(labels)
    for group, values in groups.items():
        ax.bar(labels, values, bottom=bottoms, label=group)
        bottoms = [b + v for b, v in zip(bottoms, values)]
    ax.set_ylabel("share of delivered cost")
    ax.set_title(title, fontsize=10)
    ax.legend(fontsize=8)
    return _save(fig, out_dir, name)


def table_heat(out_dir, name, row_labels, col_labels, values, title) -> str:
    fig, ax = plt.subplots(figsize=(1.2 + 0.9 * len(col_labels), 1.0 + 0.45 * len(row_labels)))
    ax.imshow(values, cmap="RdYlGn_r", aspect="auto")
    ax.set_xticks(range(len(col_labels)), col_labels, fontsize=8, rotation=30)
    ax.set_yticks(range(len(row_labels)), row_labels, fontsize=8)
    for i, row in enumerate(values):
        for j, v in enumerate(row):
            ax.text(j, i, f"{v:.3g}" if v is not None else "-", ha="center",
                    va="center", fontsize=7)
    ax.set_title(title, fontsize=10)
    return _save(fig, out_dir, name)
