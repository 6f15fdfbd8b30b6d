"""Report rendering: CSV tables and matplotlib figures for game results."""
from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .games import GameReport

__all__ = ["write_gap_report", "write_oracle_report"]


def write_gap_report(reports: list[GameReport], outdir: str | Path) -> list[Path]:
    """Write gap.csv and gap.png for a batch of game reports."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    csv_path = outdir / "gap.csv"
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["strategy", "trials", "p0_hat", "p1_hat", "gap",
                         "interval_width", "eta", "violation"])
        for rep in reports:
            writer.writerow([rep.strategy, rep.trials, rep.p_hat[0],
                             rep.p_hat[1], rep.gap, rep.interval_width,
                             rep.eta_bound, rep.violation])

    labels = [rep.strategy for rep in reports]
    xs = range(len(reports))
    fig, ax = plt.subplots(figsize=(max(6, 1.2 * len(reports)), 4))
    width = 0.35
    ax.bar([x - width / 2 for x in xs], [r.p_hat[0] for r in reports],
           width, label=r"$\hat p_0$", yerr=[r.interval_width for r in reports],
           capsize=3)
    ax.bar([x + width / 2 for x in xs], [r.p_hat[1] for r in reports],
           width, label=r"$\hat p_1$", yerr=[r.interval_width for r in reports],
           capsize=3)
    ax.set_xticks(list(xs))
    ax.set_xticklabels(labels, rotation=30, ha="right")
    ax.set_ylabel("Pr[ok = 1 and b' = 1]")
    ax.set_title("Deletion-game success probabilities per strategy")
    ax.legend()
    fig.tight_layout()
    png_path = outdir / "gap.png"
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return [csv_path, png_path]


def write_oracle_report(joint: dict, outdir: str | Path) -> list[Path]:
    """Write oracle.csv and oracle.png for an exact game distribution."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    rows = sorted(joint.items())
    csv_path = outdir / "oracle.csv"
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["ok", "b_prime", "probability"])
        for (ok, b_prime), prob in rows:
            writer.writerow([ok, b_prime, prob])

    fig, ax = plt.subplots(figsize=(5, 4))
    labels = [f"ok={ok}, b'={bp}" for (ok, bp), _ in rows]
    ax.bar(labels, [p for _, p in rows])
    ax.set_ylabel("exact probability")
    ax.set_title("Entanglement-based game outcome distribution")
    fig.tight_layout()
    png_path = outdir / "oracle.png"
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return [csv_path, png_path]
