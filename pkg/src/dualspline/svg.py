"""Static SVG plots of planar spline curves."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .spline_core import SplineCurve, curve_eval

ORIGINAL_STYLE = {"stroke": "#1f4fd1", "stroke-width": "2"}
RESULT_STYLE = {"stroke": "#d12020", "stroke-width": "2", "stroke-dasharray": "8 5"}
POLYGON_STYLE = {"stroke": "#888888", "stroke-width": "0.8"}


def _attrs(style):
    return " ".join(f'{k}="{v}"' for k, v in style.items())


def curves_to_svg(layers, size=480, margin=20, samples=500, show_polygon=False) -> str:
    """SVG text for a list of ``(curve, style)`` pairs.

    Curves are sampled on ``{0, 1/samples, ..., 1}``; only the first two
    coordinates are drawn.
    """
    grid = np.linspace(0.0, 1.0, samples + 1)
    paths = []
    for curve, style in layers:
        pts = curve_eval(curve, grid)
        if pts.shape[1] == 1:
            pts = np.column_stack([grid, pts[:, 0]])
        paths.append((pts[:, :2], style, curve))
    allpts = np.vstack([p for p, _, _ in paths])
    if show_polygon:
        allpts = np.vstack([allpts] + [c.control_points[:, :2] for _, _, c in paths if c.dim >= 2])
    lo, hi = allpts.min(axis=0), allpts.max(axis=0)
    scale = (size - 2 * margin) / max(float(np.max(hi - lo)), 1e-12)

    def to_screen(p):
        x = margin + (p[:, 0] - lo[0]) * scale
        y = size - margin - (p[:, 1] - lo[1]) * scale
        return " ".join(f"{a:.3f},{b:.3f}" for a, b in zip(x, y))

    body = []
    for pts, style, curve in paths:
        if show_polygon and curve.dim >= 2:
            body.append(f'  <polyline points="{to_screen(curve.control_points[:, :2])}" '
                        f'fill="none" {_attrs(POLYGON_STYLE)}/>')
        body.append(f'  <polyline points="{to_screen(pts)}" fill="none" {_attrs(style)}/>')
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">\n'
        f'  <rect width="{size}" height="{size}" fill="white"/>\n'
        + "\n".join(body)
        + "\n</svg>\n"
    )


def write_comparison_svg(path, original: SplineCurve, result: SplineCurve, show_polygon=False):
    """Original curve solid blue, approximation dashed red."""
    text = curves_to_svg([(original, ORIGINAL_STYLE), (result, RESULT_STYLE)],
                         show_polygon=show_polygon)
    Path(path).write_text(text)
