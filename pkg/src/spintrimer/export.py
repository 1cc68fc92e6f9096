"""File export: delimited CSV, JSON round-trip, and self-contained SVG.

The SVG writer is dependency-free so the output is diffable and testable
as plain XML: one rect per heatmap cell, one path per contour polyline
(class "contour"), axis labels and a colorbar.  CSV and JSON carry the
full numeric precision; identical scans export byte-identical files.
"""

from __future__ import annotations

import json

import numpy as np

from ._version import __version__
from .phases import PhaseMap
from .analytic import FAMILIES, family_quantum_numbers
from .scans import ContourSet, GridScan

#: fraction-of-range anchors of a monotone perceptual colormap
_CMAP_ANCHORS = [
    (0.267, 0.005, 0.329),
    (0.283, 0.141, 0.458),
    (0.254, 0.265, 0.530),
    (0.207, 0.372, 0.553),
    (0.164, 0.471, 0.558),
    (0.128, 0.567, 0.551),
    (0.135, 0.659, 0.518),
    (0.267, 0.749, 0.441),
    (0.478, 0.821, 0.318),
    (0.741, 0.873, 0.150),
    (0.993, 0.906, 0.144),
]

CMAP_SIZE = 256


def color_index(value: float, vmin: float, vmax: float) -> int:
    """Strictly increasing value -> colormap index in 0..255."""
    if vmax <= vmin:
        return 0
    t = (value - vmin) / (vmax - vmin)
    t = min(max(t, 0.0), 1.0)
    return int(round(t * (CMAP_SIZE - 1)))


def colormap_rgb(index: int) -> tuple[int, int, int]:
    """8-bit RGB of a colormap index (linear interpolation of anchors)."""
    index = min(max(int(index), 0), CMAP_SIZE - 1)
    t = index / (CMAP_SIZE - 1) * (len(_CMAP_ANCHORS) - 1)
    i = min(int(t), len(_CMAP_ANCHORS) - 2)
    f = t - i
    rgb = [
        (1 - f) * _CMAP_ANCHORS[i][c] + f * _CMAP_ANCHORS[i + 1][c]
        for c in range(3)
    ]
    return tuple(int(round(255 * v)) for v in rgb)


def _open_write(path):
    try:
        return open(path, "w", encoding="utf-8", newline="\n")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def write_csv(scan: GridScan, path) -> None:
    """One row per grid cell: x, y, value at 17 significant digits."""
    with _open_write(path) as fh:
        fh.write(f"# {scan.x_name}, {scan.y_name}, {scan.quantity}\n")
        for iy in range(len(scan.y)):
            for ix in range(len(scan.x)):
                fh.write(
                    f"{scan.x[ix]:.17g},{scan.y[iy]:.17g},{scan.values[iy, ix]:.17g}\n"
                )


def scan_to_dict(scan: GridScan) -> dict:
    return {
        "schema": "spintrimer.gridscan/1",
        "quantity": scan.quantity,
        "x": {"name": scan.x_name, "values": scan.x.tolist()},
        "y": {"name": scan.y_name, "values": scan.y.tolist()},
        "values": scan.values.tolist(),
        "metadata": scan.metadata,
    }


def scan_from_dict(d: dict) -> GridScan:
    if d.get("schema") != "spintrimer.gridscan/1":
        raise ValueError(f"unrecognized scan schema {d.get('schema')!r}")
    return GridScan(
        x_name=d["x"]["name"],
        y_name=d["y"]["name"],
        x=np.array(d["x"]["values"], dtype=float),
        y=np.array(d["y"]["values"], dtype=float),
        quantity=d["quantity"],
        values=np.array(d["values"], dtype=float),
        metadata=d.get("metadata", {}),
    )


def write_json(scan: GridScan, path) -> None:
    with _open_write(path) as fh:
        json.dump(scan_to_dict(scan), fh, sort_keys=True, indent=1)
        fh.write("\n")


def read_json(path) -> GridScan:
    try:
        with open(path, encoding="utf-8") as fh:
            return scan_from_dict(json.load(fh))
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc}") from exc


def write_contours_csv(contours: ContourSet, path) -> None:
    """Rows of (isovalue, polyline index, x, y)."""
    with _open_write(path) as fh:
        fh.write("# isovalue, polyline, x, y\n")
        for iso in contours.isovalues:
            for k, line in enumerate(contours.polylines.get(iso, [])):
                for px, py in line:
                    fh.write(f"{iso:.17g},{k},{px:.17g},{py:.17g}\n")


def write_phase_map_csv(pm: PhaseMap, path) -> None:
    """One row per cell: x, y, phase display string (quoted, it contains commas)."""
    with _open_write(path) as fh:
        fh.write(f"# {pm.x_name}, {pm.y_name}, phase\n")
        for iy in range(len(pm.y)):
            for ix in range(len(pm.x)):
                key = FAMILIES[pm.labels[iy, ix]]
                s_t, m, branch = family_quantum_numbers(key)
                sup = f"^{branch}" if branch else ""
                fh.write(f'{pm.x[ix]:.17g},{pm.y[iy]:.17g},"|{s_t},{m}>{sup}"\n')


def write_phase_boundaries_csv(pm: PhaseMap, path) -> None:
    """Bisection-refined boundary points, one row per point."""
    with _open_write(path) as fh:
        fh.write("# phase_a, phase_b, x, y\n")
        for (fa, fb), pts in sorted(pm.boundaries.items()):
            for px, py in pts:
                fh.write(f'"{fa}","{fb}",{px:.17g},{py:.17g}\n')


# ---------------------------------------------------------------------------
# SVG heatmap
# ---------------------------------------------------------------------------

_SVG_W, _SVG_H = 720, 540
_ML, _MR, _MT, _MB = 70, 110, 40, 60  # margins: left, right, top, bottom


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def write_svg(scan: GridScan, path, contours: ContourSet | None = None,
              title: str | None = None) -> None:
    """Self-contained SVG heatmap with optional contour paths."""
    nx, ny = len(scan.x), len(scan.y)
    pw = _SVG_W - _ML - _MR
    ph = _SVG_H - _MT - _MB
    vmin = float(scan.values.min())
    vmax = float(scan.values.max())

    x0, x1 = float(scan.x[0]), float(scan.x[-1])
    y0, y1 = float(scan.y[0]), float(scan.y[-1])

    def to_px(xv, yv):
        fx = 0.5 if x1 == x0 else (xv - x0) / (x1 - x0)
        fy = 0.5 if y1 == y0 else (yv - y0) / (y1 - y0)
        return _ML + fx * pw, _MT + (1.0 - fy) * ph

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SVG_W}" height="{_SVG_H}" '
        f'viewBox="0 0 {_SVG_W} {_SVG_H}">',
        f'<desc>{scan.quantity} map, spintrimer {__version__}</desc>',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    # heatmap cells, each centered on its grid node
    cw = pw / nx
    ch = ph / ny
    for iy in range(ny):
        for ix in range(nx):
            r, g, b = colormap_rgb(color_index(scan.values[iy, ix], vmin, vmax))
            px = _ML + ix * cw
            py = _MT + (ny - 1 - iy) * ch
            parts.append(
                f'<rect class="cell" x="{_fmt(px)}" y="{_fmt(py)}" '
                f'width="{_fmt(cw + 0.5)}" height="{_fmt(ch + 0.5)}" '
                f'fill="rgb({r},{g},{b})"/>'
            )
    # contour polylines
    if contours is not None:
        for iso in contours.isovalues:
            for line in contours.polylines.get(iso, []):
                if len(line) < 2:
                    continue
                coords = [to_px(px, py) for px, py in line]
                d = "M " + " L ".join(f"{_fmt(cx)} {_fmt(cy)}" for cx, cy in coords)
                parts.append(
                    f'<path class="contour" data-isovalue="{_fmt(iso)}" d="{d}" '
                    'fill="none" stroke="black" stroke-width="1.2"/>'
                )
    # frame and axis labels
    parts.append(
        f'<rect x="{_ML}" y="{_MT}" width="{pw}" height="{ph}" '
        'fill="none" stroke="black"/>'
    )
    parts.append(
        f'<text class="xlabel" x="{_ML + pw / 2}" y="{_SVG_H - 18}" '
        f'text-anchor="middle" font-size="15">{scan.x_name}</text>'
    )
    parts.append(
        f'<text class="ylabel" x="20" y="{_MT + ph / 2}" text-anchor="middle" '
        f'font-size="15" transform="rotate(-90 20 {_MT + ph / 2})">{scan.y_name}</text>'
    )
    for xv in (x0, x1):
        px, _ = to_px(xv, y0)
        parts.append(
            f'<text x="{_fmt(px)}" y="{_SVG_H - 40}" text-anchor="middle" '
            f'font-size="12">{_fmt(xv)}</text>'
        )
    for yv in (y0, y1):
        _, py = to_px(x0, yv)
        parts.append(
            f'<text x="{_ML - 8}" y="{_fmt(py + 4)}" text-anchor="end" '
            f'font-size="12">{_fmt(yv)}</text>'
        )
    if title:
        parts.append(
            f'<text class="title" x="{_ML + pw / 2}" y="24" text-anchor="middle" '
            f'font-size="16">{title}</text>'
        )
    # colorbar
    cb_x = _SVG_W - _MR + 25
    cb_n = 64
    cb_h = ph / cb_n
    for k in range(cb_n):
        r, g, b = colormap_rgb(int(round(k / (cb_n - 1) * (CMAP_SIZE - 1))))
        py = _MT + ph - (k + 1) * cb_h
        parts.append(
            f'<rect class="cbar" x="{cb_x}" y="{_fmt(py)}" width="18" '
            f'height="{_fmt(cb_h + 0.5)}" fill="rgb({r},{g},{b})"/>'
        )
    parts.append(
        f'<rect x="{cb_x}" y="{_MT}" width="18" height="{ph}" fill="none" stroke="black"/>'
    )
    parts.append(
        f'<text x="{cb_x + 24}" y="{_MT + ph}" font-size="12">{_fmt(vmin)}</text>'
    )
    parts.append(
        f'<text x="{cb_x + 24}" y="{_MT + 10}" font-size="12">{_fmt(vmax)}</text>'
    )
    parts.append(
        f'<text x="{cb_x + 24}" y="{_MT + ph / 2}" font-size="12">{scan.quantity}</text>'
    )
    parts.append("</svg>")
    with _open_write(path) as fh:
        fh.write("\n".join(parts))
        fh.write("\n")
