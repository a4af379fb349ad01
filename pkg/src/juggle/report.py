"""Fairness sweep reporting: delimited output plus rendered figures.

Runs the swap once per abort point (every segment index, both parties),
collects the decrypted-segment counts, and writes a CSV next to a PNG
figure showing how far ahead an aborting party can get.
"""

from __future__ import annotations

import csv
from dataclasses import replace
from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .segmentation import SegmentationParams
from .swap import Adversary, SwapConfig, run_swap
from .group import get_group


def fairness_sweep(base: SwapConfig) -> list[dict]:
    """One row per (aborting party, abort index), plus the honest run."""
    group = get_group(base.group)
    m = SegmentationParams.for_group(group, base.l).m
    rows = []
    honest = run_swap(replace(base, adversary=None))
    rows.append({"party": "none", "abort_at": "",
                 "p1_segments": honest.report.p1_segments,
                 "p2_segments": honest.report.p2_segments,
                 "advantage": honest.report.advantage})
    for party in ("P1", "P2"):
        for k in range(0, m + 1):
            adv = Adversary("abort_at_segment", party=party, segment_k=k)
            res = run_swap(replace(base, adversary=adv))
            rows.append({"party": party, "abort_at": k,
                         "p1_segments": res.report.p1_segments,
                         "p2_segments": res.report.p2_segments,
                         "advantage": res.report.advantage})
    return rows


def write_csv(rows: list[dict], path: Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(
            fh, fieldnames=["party", "abort_at", "p1_segments",
                            "p2_segments", "advantage"])
        writer.writeheader()
        writer.writerows(rows)


def render_figure(rows: list[dict], path: Path) -> None:
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.5), sharey=False)
    for party, marker in (("P1", "o"), ("P2", "s")):
        pts = [(r["abort_at"], r["advantage"]) for r in rows
               if r["party"] == party]
        ax1.plot([p[0] for p in pts], [p[1] for p in pts], marker=marker,
                 linestyle="-", label=f"{party} aborts")
    ax1.axhline(1, color="gray", linestyle="--", linewidth=0.8)
    ax1.set_xlabel("abort before segment k")
    ax1.set_ylabel("segment advantage")
    ax1.set_title("advantage stays at most one segment")
    ax1.set_ylim(-0.2, 2)
    ax1.legend()

    for party, marker in (("P1", "o"), ("P2", "s")):
        pts = [(r["abort_at"], r["p1_segments"], r["p2_segments"])
               for r in rows if r["party"] == party]
        ax2.plot([p[0] for p in pts], [p[1] for p in pts], marker=marker,
                 linestyle="-", label=f"P1 holds ({party} aborts)")
        ax2.plot([p[0] for p in pts], [p[2] for p in pts], marker=marker,
                 linestyle="--", label=f"P2 holds ({party} aborts)")
    ax2.set_xlabel("abort before segment k")
    ax2.set_ylabel("decrypted segments")
    ax2.set_title("progress at termination")
    ax2.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_report(base: SwapConfig, out_dir: Path) -> tuple[Path, Path]:
    """Run the sweep and drop fairness.csv + fairness.png into out_dir."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = fairness_sweep(base)
    csv_path = out_dir / "fairness.csv"
    png_path = out_dir / "fairness.png"
    write_csv(rows, csv_path)
    render_figure(rows, png_path)
    return csv_path, png_path
