"""Run reports: per-item CSV rows, aggregate statistics, and rendered
figures saved alongside the delimited output.

CSV bytes are a pure function of rows, so identical seeds and flags give
identical files; wall time lives only in the aggregate summary.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

ANSC_HEADER = ["vertex", "estimate", "exact", "ratio", "algorithm", "params", "seed"]
NPSP_HEADER = ["s", "t", "estimate", "exact", "ratio", "algorithm", "params", "seed"]
BENCH_HEADER = ["algorithm", "n", "m", "param_k", "param_eps", "seed",
                "edges_scanned", "max_ratio", "mean_ratio", "max_surplus"]

__all__ = ["RunReport", "ANSC_HEADER", "NPSP_HEADER", "BENCH_HEADER",
           "render_compare_figure", "render_bench_figure"]


@dataclass
class RunReport:
    """Per-item rows plus aggregates recomputable from them."""

    algorithm: str
    params: dict
    seed: int
    header: list[str]
    rows: list[list]
    wall_time: float = 0.0

    def aggregates(self) -> dict:
        ratios = []
        surpluses = []
        for row in self.rows:
            d = dict(zip(self.header, row))
            ratio = d.get("ratio", "")
            if ratio not in ("", None):
                ratios.append(float(ratio))
            est, ex = d.get("estimate"), d.get("exact")
            if ex not in ("", None) and est not in ("inf", "", None):
                surpluses.append(float(est) - float(ex))
        return {
            "items": len(self.rows),
            "max_ratio": max(ratios) if ratios else math.nan,
            "mean_ratio": sum(ratios) / len(ratios) if ratios else math.nan,
            "max_surplus": max(surpluses) if surpluses else math.nan,
            "wall_time": self.wall_time,
        }

    def write_csv(self, target) -> None:
        if hasattr(target, "write"):
            w = csv.writer(target, lineterminator="\n")
            w.writerow(self.header)
            w.writerows(self.rows)
            return
        with open(target, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(self.header)
            w.writerows(self.rows)


def _ratio_columns(report: RunReport):
    est, ex = [], []
    for row in report.rows:
        d = dict(zip(report.header, row))
        if d.get("exact") not in ("", None) and d.get("estimate") not in ("inf", "", None):
            est.append(float(d["estimate"]))
            ex.append(float(d["exact"]))
    return np.asarray(ex), np.asarray(est)


def render_compare_figure(report: RunReport, path: str) -> None:
    """Estimate-vs-exact scatter and ratio histogram next to the CSV."""
    ex, est = _ratio_columns(report)
    fig, axes = plt.subplots(1, 2, figsize=(9, 4))
    ax = axes[0]
    if len(ex):
        ax.scatter(ex, est, s=12, alpha=0.6, edgecolors="none")
        lim = max(ex.max(), est.max()) * 1.05
        ax.plot([0, lim], [0, lim], "k--", lw=0.8, label="exact")
        ax.set_xlim(0, lim)
        ax.set_ylim(0, lim)
        ax.legend(frameon=False)
    ax.set_xlabel("exact value")
    ax.set_ylabel("estimate")
    ax.set_title(report.algorithm)
    ax = axes[1]
    if len(ex):
        ratios = est / np.maximum(ex, 1e-12)
        ax.hist(ratios, bins=30, color="#4878d0")
        ax.axvline(1.0, color="k", ls="--", lw=0.8)
        ax.set_title(f"max ratio {ratios.max():.3f}")
    ax.set_xlabel("estimate / exact")
    ax.set_ylabel("count")
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def render_bench_figure(rows: list[list], path: str) -> None:
    """Log-log work-counter scaling per algorithm."""
    by_algo: dict[str, list[tuple[int, int]]] = {}
    for row in rows:
        d = dict(zip(BENCH_HEADER, row))
        by_algo.setdefault(d["algorithm"], []).append(
            (int(d["m"]), int(d["edges_scanned"])))
    fig, ax = plt.subplots(figsize=(6, 4.5))
    for algo, pts in sorted(by_algo.items()):
        pts = sorted(pts)
        ms = np.asarray([p[0] for p in pts], dtype=float)
        work = np.asarray([max(p[1], 1) for p in pts], dtype=float)
        ax.loglog(ms, work, "o-", ms=4, label=algo)
    ax.set_xlabel("edges m")
    ax.set_ylabel("edges scanned")
    ax.grid(True, which="both", lw=0.3, alpha=0.5)
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
