"""Static SVG figure of a curve, its polar and its kernel."""

from __future__ import annotations

import numpy as np

from .curve import WoundPolygon
from .polarity import polar
from .santalo import kernel

SIZE = 600


def _path(points: np.ndarray, to_px) -> str:
    px = [to_px(p) for p in points]
    head = f"M {px[0][0]:.3f} {px[0][1]:.3f}"
    body = " ".join(f"L {x:.3f} {y:.3f}" for x, y in px[1:])
    return f"{head} {body} Z"


def render(C: WoundPolygon, show_polar: bool = True, show_kernel: bool = True) -> str:
    """SVG 1.1 document; the polar is rescaled to the curve's maximal radius."""
    xy = C.xy
    R = float(np.max(np.hypot(xy[:, 0], xy[:, 1])))
    scale = 0.45 * SIZE / R

    def to_px(p):
        return SIZE / 2 + scale * p[0], SIZE / 2 - scale * p[1]

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>',
    ]
    if show_kernel:
        K = kernel(C)
        parts.append(f'<path id="kernel" d="{_path(K.vertices, to_px)}" fill="#4a90d9" '
                     'fill-opacity="0.3" stroke="none"/>')
    if show_polar:
        P = polar(C).xy
        f = R / float(np.max(np.hypot(P[:, 0], P[:, 1])))
        parts.append(f'<path id="polar" d="{_path(P * f, to_px)}" fill="none" stroke="#d9534f" '
                     'stroke-width="1" stroke-dasharray="4 3"/>')
        parts.append(f'<text x="10" y="{SIZE - 30}" font-size="12" fill="#d9534f">'
                     f'polar (scaled by {f:.4g})</text>')
    parts.append(f'<path id="curve" d="{_path(xy, to_px)}" fill="none" stroke="black" '
                 'stroke-width="1.5"/>')
    cx, cy = to_px((0.0, 0.0))
    parts.append(f'<circle cx="{cx:.3f}" cy="{cy:.3f}" r="2.5" fill="black"/>')
    parts.append(f'<text x="10" y="{SIZE - 12}" font-size="12">k = {C.k}, n = {C.n}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
