"""Matplotlib figures for bench reports."""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

RC = {
    "figure.figsize": (6.0, 4.0),
    "figure.dpi": 100,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "font.size": 10,
    "svg.hashsalt": "plane-spanner",
}
STAGE_COLORS = {"T": "#7f7f7f", "Y4": "#1f77b4", "H8": "#2ca02c", "H6": "#ff7f0e", "H4": "#d62728"}


def _save(fig, path: Path) -> Path:
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return path


def plot_bench(summary, out_dir) -> list[Path]:
    """Stretch versus n for each stage, and the H4 / H8 degree histograms."""
    from .bench import STRETCH_STAGES
    from .verify import EMPIRICAL_STRETCH

    out = Path(out_dir)
    ok = [t for t in summary.trials if not t.error]
    paths = []
    with plt.rc_context(RC):
        fig, ax = plt.subplots()
        for s in STRETCH_STAGES:
            pts = [(t.n, t.stretch[s]) for t in ok if s in t.stretch]
            if pts:
                ax.scatter(*zip(*pts), s=10, label=s, color=STAGE_COLORS[s], alpha=0.7)
        ax.axhline(EMPIRICAL_STRETCH, color="k", lw=0.8, ls="--", label="expected ceiling")
        ax.set_xlabel("n")
        ax.set_ylabel("measured stretch")
        ax.legend(frameon=False, ncol=3)
        paths.append(_save(fig, out / "stretch_vs_n.png"))

        fig, ax = plt.subplots()
        degs = [t.h4_max_degree for t in ok]
        degs8 = [t.h8_max_degree for t in ok]
        bins = range(0, max(degs8 + [9]) + 2)
        ax.hist([degs, degs8], bins=bins, label=["H4", "H8"], color=[STAGE_COLORS["H4"], STAGE_COLORS["H8"]],
                align="left")
        ax.set_xlabel("max degree per trial")
        ax.set_ylabel("trials")
        ax.legend(frameon=False)
        paths.append(_save(fig, out / "max_degree.png"))
    return paths
