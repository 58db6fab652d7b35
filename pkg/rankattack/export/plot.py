import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import pandas as pd


def plot_isr(plotdata: pd.DataFrame, path: str, title: str = "Interval success rate") -> None:
    """
    Plots the success rate of every strategy against the midpoint of each rank interval.
    Empty intervals are left out of the curves.
    """
    fig, ax = plt.subplots(figsize=(7, 4))
    for strategy, group in plotdata.groupby("strategy", sort=False):
        group = group.dropna(subset=["isr_pct"])
        midpoints = (group["interval_lo"] + group["interval_hi"]) / 2
        ax.plot(midpoints, group["isr_pct"], marker="o", label=strategy)

    ax.set_xlabel("Original rank (interval midpoint)")
    ax.set_ylabel("Success rate (%)")
    ax.set_ylim(0, 100)
    ax.set_title(title)
    ax.grid(alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
