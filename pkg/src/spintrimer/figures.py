"""Matplotlib rendering of scans and phase maps to image files.

The CLI report path writes these figures next to the delimited output.
Everything renders off-screen (Agg); the file format follows the output
extension (.png, .pdf, .svg).
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .analytic import FAMILIES, family_quantum_numbers
from .phases import PhaseMap
from .scans import ContourSet, GridScan


def _family_display(key: str) -> str:
    s_t, m, branch = family_quantum_numbers(key)
    sup = f"$^{{\\rm {branch}}}$" if branch else ""
    return f"$|{s_t},{m}\\rangle$" + sup


def render_heatmap(scan: GridScan, path, contours: ContourSet | None = None,
                   title: str | None = None) -> None:
    """Density plot of a grid scan with optional contour overlay."""
    fig, ax = plt.subplots(figsize=(6.4, 4.8), constrained_layout=True)
    extent = (scan.x[0], scan.x[-1], scan.y[0], scan.y[-1])
    im = ax.imshow(
        scan.values, origin="lower", aspect="auto", extent=extent,
        cmap="viridis", interpolation="nearest",
    )
    if contours is not None:
        for iso in contours.isovalues:
            for line in contours.polylines.get(iso, []):
                if len(line) > 1:
                    ax.plot(line[:, 0], line[:, 1], "k-", lw=1.0)
    ax.set_xlabel(scan.x_name)
    ax.set_ylabel(scan.y_name)
    if title:
        ax.set_title(title)
    fig.colorbar(im, ax=ax, label=scan.quantity)
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_phase_map(pm: PhaseMap, path, title: str | None = None) -> None:
    """Discrete phase regions with bisected boundary curves overlaid."""
    fig, ax = plt.subplots(figsize=(6.4, 4.8), constrained_layout=True)
    present = sorted(set(pm.labels.ravel()))
    remap = {lab: k for k, lab in enumerate(present)}
    img = np.vectorize(remap.get)(pm.labels)
    extent = (pm.x[0], pm.x[-1], pm.y[0], pm.y[-1])
    cmap = matplotlib.colormaps["tab10"].resampled(max(len(present), 2))
    im = ax.imshow(
        img, origin="lower", aspect="auto", extent=extent, cmap=cmap,
        interpolation="nearest", vmin=-0.5, vmax=max(len(present), 2) - 0.5,
    )
    for pts in pm.boundaries.values():
        if len(pts) > 1:
            ax.plot(pts[:, 0], pts[:, 1], "k.", ms=1.5)
    cbar = fig.colorbar(im, ax=ax, ticks=range(len(present)))
    cbar.ax.set_yticklabels([_family_display(FAMILIES[lab]) for lab in present])
    ax.set_xlabel(pm.x_name)
    ax.set_ylabel(pm.y_name)
    if title:
        ax.set_title(title)
    fig.savefig(path, dpi=150)
    plt.close(fig)
