"""CSV and SVG writers for tracks.

CSV values use ``repr`` so every double survives a round trip. The SVG keeps
one uniform scale for all curves so the unit segment keeps its true length.
"""

from __future__ import annotations

import csv
import io
import os
import tempfile
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

from .bike import BikeTrajectory
from .frontpath import FrontPath, MagneticPath

TRACK_COLUMNS = ("t", "X", "Y", "theta", "Rx", "Ry", "phi", "v")
MAGNETIC_COLUMNS = ("t", "X", "Y", "heading", "v")

VIEWBOX = 1000.0
MARGIN = 0.05
COLORS = ("#1f4e9c", "#c0392b", "#2e8b57")


def _csv_text(columns, data) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in data:
        writer.writerow([repr(float(x)) for x in row])
    return buf.getvalue()


def track_csv(path: FrontPath, bike: BikeTrajectory) -> str:
    data = np.column_stack(
        [path.times, path.X, path.Y, bike.theta, bike.rear[:, 0], bike.rear[:, 1], path.phi, path.v]
    )
    return _csv_text(TRACK_COLUMNS, data)


def magnetic_csv(mp: MagneticPath) -> str:
    data = np.column_stack([mp.grid.times, mp.position, mp.heading, mp.speed])
    return _csv_text(MAGNETIC_COLUMNS, data)


def parse_csv(text: str) -> dict[str, np.ndarray]:
    """Columns of an emitted CSV keyed by header name."""
    rows = list(csv.reader(io.StringIO(text)))
    header, body = rows[0], rows[1:]
    data = np.array([[float(x) for x in row] for row in body], dtype=float).reshape(-1, len(header))
    return {name: data[:, i] for i, name in enumerate(header)}


def read_csv(path) -> dict[str, np.ndarray]:
    return parse_csv(Path(path).read_text())


def fit_transform(curves, size=VIEWBOX, margin=MARGIN):
    """Uniform scale and offset placing all curves inside the margin-padded box.

    Returns ``(scale, (ox, oy))`` with SVG coordinate ``scale * x + ox``.
    """
    pts = np.concatenate([np.asarray(c, dtype=float) for c in curves])
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    span = float(np.max(hi - lo))
    usable = size * (1.0 - 2.0 * margin)
    scale = usable / span if span > 0 else 1.0
    center = 0.5 * (lo + hi)
    offset = 0.5 * size - scale * center
    return scale, (float(offset[0]), float(offset[1]))


def _path_data(points, scale, offset):
    xy = np.asarray(points) * scale + np.asarray(offset)
    coords = " ".join(f"{x:.6f},{y:.6f}" for x, y in xy)
    return f"M {coords}"


def polylines_svg(curves, labels, title=""):
    """One ``<path>`` per curve plus a text legend; y points up."""
    scale, offset = fit_transform(curves)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {VIEWBOX:g} {VIEWBOX:g}" '
        f'width="{VIEWBOX:g}" height="{VIEWBOX:g}">',
    ]
    if title:
        out.append(f"<title>{escape(title)}</title>")
    out.append('<rect width="100%" height="100%" fill="white"/>')
    out.append(f'<g transform="translate(0,{VIEWBOX:g}) scale(1,-1)">')
    for curve, label, color in zip(curves, labels, COLORS):
        out.append(
            f'<path data-label="{escape(label)}" d="{_path_data(curve, scale, offset)}" '
            f'fill="none" stroke="{color}" stroke-width="2"/>'
        )
    out.append("</g>")
    out.append('<g font-family="sans-serif" font-size="20">')
    for i, (label, color) in enumerate(zip(labels, COLORS)):
        y = 40 + 30 * i
        out.append(f'<line x1="30" y1="{y - 6}" x2="70" y2="{y - 6}" stroke="{color}" stroke-width="3"/>')
        out.append(f'<text x="80" y="{y}">{escape(label)}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def track_svg(path: FrontPath, bike: BikeTrajectory, title="") -> str:
    return polylines_svg([path.points, bike.rear], ["front wheel", "rear wheel"], title)


def magnetic_svg(mp: MagneticPath, title="") -> str:
    return polylines_svg([mp.position], ["magnetic particle"], title)


def write_atomic(target, text: str) -> None:
    """Write via a temporary file in the same directory, so failures leave nothing behind."""
    target = Path(target)
    fd, tmp = tempfile.mkstemp(dir=target.parent if str(target.parent) else ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise
