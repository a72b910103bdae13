"""Matplotlib figures for tracks, potential galleries and the magnetic particle.

Figures are rendered off-screen and written to files; nothing here opens a window.
"""

from __future__ import annotations

import math
from contextlib import contextmanager

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

golden_mean = (math.sqrt(5) - 1.0) / 2.0

params = {
    "font.size": 9,
    "axes.labelsize": 9,
    "axes.titlesize": 9,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "lines.linewidth": 1.0,
    "figure.dpi": 150,
    "savefig.bbox": "tight",
}


@contextmanager
def style():
    with plt.rc_context(params):
        yield


def plot_track(path, bike=None, ax=None, title=None):
    """Front path and (optionally) rear track on equal axes."""
    if ax is None:
        _, ax = plt.subplots(figsize=(4.5, 4.5))
    ax.plot(path.X, path.Y, color="C0", label="front wheel")
    if bike is not None:
        ax.plot(bike.rear[:, 0], bike.rear[:, 1], color="C3", label="rear wheel")
        # a few bike frames
        for k in np.linspace(0, len(bike.theta) - 1, 7).astype(int):
            ax.plot(
                [bike.rear[k, 0], bike.front[k, 0]],
                [bike.rear[k, 1], bike.front[k, 1]],
                color="0.4",
                lw=0.8,
            )
            ax.plot(*bike.front[k], "o", color="C0", ms=2.5)
            ax.plot(*bike.rear[k], "o", color="C3", ms=2.5)
    ax.set_aspect("equal", adjustable="datalim")
    ax.set_xlabel("X")
    ax.set_ylabel("Y")
    if title:
        ax.set_title(title)
    ax.legend(loc="best", frameon=False)
    return ax


def plot_magnetic(mp, ax=None, title=None):
    """Particle trace; samples where the signed speed changes sign are marked as cusps."""
    if ax is None:
        _, ax = plt.subplots(figsize=(4.5, 4.5))
    ax.plot(mp.position[:, 0], mp.position[:, 1], color="C2")
    flips = np.flatnonzero(np.sign(mp.speed[1:]) * np.sign(mp.speed[:-1]) < 0)
    if flips.size:
        ax.plot(mp.position[flips, 0], mp.position[flips, 1], "kx", ms=5, label="v = 0 (cusp)")
        ax.legend(loc="best", frameon=False)
    ax.set_aspect("equal", adjustable="datalim")
    ax.set_xlabel("X")
    ax.set_ylabel("Y")
    if title:
        ax.set_title(title)
    return ax


def plot_gallery(paths, titles, ncols=3):
    """Grid of front paths, one panel per potential."""
    nrows = math.ceil(len(paths) / ncols)
    fig, axes = plt.subplots(nrows, ncols, figsize=(3.0 * ncols, 3.0 * nrows), squeeze=False)
    for ax, path, title in zip(axes.flat, paths, titles):
        ax.plot(path.X, path.Y, color="C0")
        ax.set_aspect("equal", adjustable="datalim")
        ax.set_title(title)
        ax.set_xticks([])
        ax.set_yticks([])
    for ax in list(axes.flat)[len(paths):]:
        ax.set_visible(False)
    fig.tight_layout()
    return fig


def plot_equivalence(report, ax=None, title=None):
    """Bike angle against its Hill-side prediction, with the residual on a twin axis."""
    if ax is None:
        _, ax = plt.subplots(figsize=(5.0, 5.0 * golden_mean))
    t = report.grid.times
    ax.plot(t, report.theta_bike, color="C0", label=r"$\theta$ (bike)")
    ax.plot(t, report.theta_hill, "--", color="C1", label=r"$2\alpha+\varphi$ (Hill)")
    ax.set_xlabel("t")
    ax.set_ylabel("angle [rad]")
    ax.legend(loc="upper left", frameon=False)
    twin = ax.twinx()
    twin.plot(t, report.residual, color="0.5", lw=0.6)
    twin.set_ylabel("residual [rad]")
    if title:
        ax.set_title(title)
    return ax


def save(fig_or_ax, target):
    fig = fig_or_ax if isinstance(fig_or_ax, plt.Figure) else fig_or_ax.figure
    fig.savefig(target)
    plt.close(fig)
