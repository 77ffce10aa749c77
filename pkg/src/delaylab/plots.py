"""Matplotlib figures written next to the CSV output of the command-line tools."""

from __future__ import annotations

from contextlib import contextmanager
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

STYLE = {
    "figure.figsize": (7.0, 4.0),
    "font.size": 10,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "lines.linewidth": 1.2,
    "savefig.dpi": 150,
    "savefig.bbox": "tight",
    # keeps PNG bytes stable across runs
    "svg.hashsalt": "delaylab",
}


@contextmanager
def figure(path, title=None, xlabel=None, ylabel=None):
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        try:
            yield ax
            if title:
                ax.set_title(title)
            if xlabel:
                ax.set_xlabel(xlabel)
            if ylabel:
                ax.set_ylabel(ylabel)
            if ax.get_legend_handles_labels()[0]:
                ax.legend(frameon=False)
            Path(path).parent.mkdir(parents=True, exist_ok=True)
            fig.savefig(path, metadata={"Software": None})
        finally:
            plt.close(fig)


def plot_trajectory(traj, path, label="z", equilibrium=None, title=None, xlabel="t"):
    with figure(path, title=title, xlabel=xlabel, ylabel=label) as ax:
        ax.plot(traj.times, traj.values, label=label)
        if equilibrium is not None:
            ax.axhline(equilibrium, color="0.4", ls="--", lw=0.8, label=f"{label} = {equilibrium:g}")


def plot_econ(econ, path, title=None):
    years = econ.times / 12
    with figure(path, title=title, xlabel="time (years)", ylabel="percent") as ax:
        ax.plot(years, econ.long_rate_actual * 100, label="actual long rate")
        ax.plot(years, econ.inflation * 100, label="inflation")
        ax.axhline(0.0, color="0.4", lw=0.6)


def plot_error_tables(labeled_tables, exact, path, title=None):
    """``labeled_tables`` is a list of ``(label, ErrorTable)``; ``exact`` is a callable of t."""
    fine = np.linspace(0.0, 3.0, 601)
    with figure(path, title=title, xlabel="t", ylabel="z") as ax:
        ax.plot(fine, [exact(t) for t in fine], color="k", label="exact")
        for label, tab in labeled_tables:
            ax.plot(tab.times, tab.simulated, "o", ms=3, label=f"simulated, dt={label}")


def plot_regime_report(a_values, ratios, predicted, empirical, path, thresholds=None):
    with figure(path, title="Regime sweep", xlabel="a", ylabel="mean successive-peak ratio") as ax:
        a = np.asarray(a_values, dtype=float)
        r = np.asarray(ratios, dtype=float)
        colors = {"asymptotic": "tab:green", "damped": "tab:blue", "sustained": "tab:red"}
        for name, color in colors.items():
            mask = np.array([e == name for e in empirical])
            if mask.any():
                shown = np.where(np.isnan(r[mask]), 0.0, r[mask])
                ax.plot(a[mask], shown, "o", color=color, label=f"empirical {name}")
        if thresholds is not None:
            for x in (thresholds.asymptotic_bound, thresholds.sustained_bound):
                ax.axvline(x, color="0.4", ls="--", lw=0.8)


def plot_hopf(evaluations, estimate, path):
    with figure(path, title="Hopf boundary bisection", xlabel="step", ylabel="a") as ax:
        for k, (a, verdict) in enumerate(evaluations):
            color = "tab:red" if verdict.value == "sustained" else "tab:blue"
            ax.plot(k, a, "o", color=color)
        ax.axhline(estimate, color="k", lw=0.8, label=f"a* = {estimate:.4f}")
        ax.axhline(1.5706, color="0.4", ls="--", lw=0.8, label="1.5706")
