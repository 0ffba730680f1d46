"""Tab-delimited reports with companion figures for crosscheck runs.

``write_report`` takes one row per graph and writes a TSV file plus two PNG
figures next to it: a verdict bar chart and a histogram of closed-walk
counts.  Returns the paths it created, TSV first.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Any, Mapping, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

__all__ = ["REPORT_COLUMNS", "write_report"]

REPORT_COLUMNS = (
    "file",
    "sha256",
    "vertices",
    "edges",
    "closed_walks",
    "criterion_planar",
    "embedding_planar",
    "agree",
    "genus",
    "faces",
)


def _verdict_figure(rows: Sequence[Mapping[str, Any]], path: Path) -> None:
    planar = sum(1 for r in rows if r["agree"] and r["criterion_planar"])
    nonplanar = sum(1 for r in rows if r["agree"] and not r["criterion_planar"])
    disagree = sum(1 for r in rows if not r["agree"])
    fig, ax = plt.subplots(figsize=(5, 4))
    bars = ax.bar(
        ["planar", "non-planar", "disagree"],
        [planar, nonplanar, disagree],
        color=["#4c9f70", "#c05746", "#888888"],
    )
    ax.bar_label(bars)
    ax.set_ylabel("graphs")
    ax.set_title("crosscheck verdicts")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def _walks_figure(rows: Sequence[Mapping[str, Any]], path: Path) -> None:
    counts = [int(r["closed_walks"]) for r in rows]
    fig, ax = plt.subplots(figsize=(5, 4))
    bins = max(1, min(30, len(set(counts))))
    ax.hist(counts, bins=bins, color="#4a7fb5", edgecolor="white")
    ax.set_xlabel("closed walks per graph")
    ax.set_ylabel("graphs")
    ax.set_title("closed-walk counts")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_report(rows: Sequence[Mapping[str, Any]], tsv_path: str | Path) -> list[Path]:
    """Write the TSV and its two PNG figures; returns created paths."""
    tsv = Path(tsv_path)
    with tsv.open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(REPORT_COLUMNS), delimiter="\t")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: row[k] for k in REPORT_COLUMNS})
    verdicts = tsv.with_name(tsv.stem + "_verdicts.png")
    walks = tsv.with_name(tsv.stem + "_walks.png")
    _verdict_figure(rows, verdicts)
    _walks_figure(rows, walks)
    return [tsv, verdicts, walks]
