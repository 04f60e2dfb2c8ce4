"""Figure rendering for ingest runs: a stage funnel and a similarity chart.

Rendering is headless (Agg) and file-based; the CLI calls this when asked
for figures so library users never pay the matplotlib import cost.
"""

from __future__ import annotations

from pathlib import Path


def render_report_figures(report: dict, results: list[dict], out_dir) -> list[Path]:
    """Write funnel.png and similarity.png under out_dir; returns the paths."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    stages = ["pages", "extracted", "ranked", "persisted"]
    counts = [int(report.get(stage, 0)) for stage in stages]
    fig, ax = plt.subplots(figsize=(6, 4))
    bars = ax.bar(stages, counts, color="#4878a8")
    ax.bar_label(bars)
    ax.set_ylabel("count")
    ax.set_title("Pipeline stage funnel")
    fig.tight_layout()
    funnel_path = out_dir / "funnel.png"
    fig.savefig(funnel_path, dpi=150)
    plt.close(fig)
    written.append(funnel_path)

    if results:
        names = [row["product"]["name"] or row["product"]["source_url"] for row in results]
        names = [n if len(n) <= 28 else n[:27] + "…" for n in names]
        sims = [row["similarity"] for row in results]
        fig, ax = plt.subplots(figsize=(7, 0.5 * len(names) + 2))
        ax.barh(range(len(names)), sims, color="#6aa84f")
        ax.set_yticks(range(len(names)))
        ax.set_yticklabels(names)
        ax.invert_yaxis()
        ax.set_xlim(0, 1.05)
        ax.set_xlabel("similarity")
        ax.set_title("Ranked results")
        fig.tight_layout()
        sim_path = out_dir / "similarity.png"
        fig.savefig(sim_path, dpi=150)
        plt.close(fig)
        written.append(sim_path)

    return written
