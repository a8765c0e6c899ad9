"""Deterministic SVG 1.1 and DOT emitters for styled networks.

Both emitters are plain string builders: same styled input, same bytes out.
Layout coordinates (centroid at origin, y up) are mapped to a fixed-size
pixel canvas with y pointing down, so the first objective sector occupies
the upper half of a two-objective node on screen.
"""

from __future__ import annotations

import math

import numpy as np

from .styling import StyledMoGram, StyleSpec

CANVAS = 600.0  # longer side of the drawing, in pixels

_EDGE_COLOR = "#6B6B6B"
_OUTLINE_COLOR = "#333333"
_LABEL_COLOR = "#333333"
_FONT = "Helvetica, Arial, sans-serif"


def _fmt(x: float) -> str:
    # -0.00 and 0.00 must not depend on the sign of a float zero
    s = f"{x:.2f}"
    return "0.00" if s == "-0.00" else s


def pixel_positions(styled: StyledMoGram) -> np.ndarray:
    """Node centers in pixel coordinates (y down), shape (n, 2)."""
    pos = styled.layout.positions
    span = pos.max(axis=0) - pos.min(axis=0)
    longer = float(span.max())
    scale = CANVAS / longer if longer > 0 else 1.0
    out = pos * scale
    return np.column_stack([out[:, 0], -out[:, 1]])


def _sector_path(cx: float, cy: float, r: float, k: int, total: int) -> str:
    """Filled pie sector k of ``total``, starting at 12 o'clock, clockwise."""
    start = -0.5 * math.pi + 2.0 * math.pi * k / total
    end = -0.5 * math.pi + 2.0 * math.pi * (k + 1) / total
    x0, y0 = cx + r * math.cos(start), cy + r * math.sin(start)
    x1, y1 = cx + r * math.cos(end), cy + r * math.sin(end)
    large = 1 if (end - start) > math.pi else 0
    return (
        f"M {_fmt(cx)} {_fmt(cy)} L {_fmt(x0)} {_fmt(y0)} "
        f"A {_fmt(r)} {_fmt(r)} 0 {large} 1 {_fmt(x1)} {_fmt(y1)} Z"
    )


def emit_svg(styled: StyledMoGram, spec: StyleSpec | None = None) -> str:
    """Render to a standalone SVG document.

    Edges are drawn first, then nodes; each node group holds a white backing
    disc, one filled sector path per objective (or a single uniform disc),
    and the node id as centered text.
    """
    spec = spec or styled.spec
    px = pixel_positions(styled)
    r = spec.node_radius

    xmin, ymin = px.min(axis=0)
    xmax, ymax = px.max(axis=0)
    margin = 0.10 * max(xmax - xmin, ymax - ymin, 1.0)
    vx, vy = xmin - margin, ymin - margin
    vw, vh = (xmax - xmin) + 2 * margin, (ymax - ymin) + 2 * margin

    lines: list[str] = []
    lines.append('<?xml version="1.0" encoding="UTF-8"?>')
    lines.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_fmt(vx)} {_fmt(vy)} {_fmt(vw)} {_fmt(vh)}" '
        f'width="{_fmt(vw)}" height="{_fmt(vh)}">'
    )
    lines.append(
        f'  <rect x="{_fmt(vx)}" y="{_fmt(vy)}" width="{_fmt(vw)}" '
        f'height="{_fmt(vh)}" fill="#FFFFFF"/>'
    )

    lines.append('  <g id="edges">')
    for e in styled.edge_render:
        (x1, y1), (x2, y2) = px[e.a - 1], px[e.b - 1]
        lines.append(
            f'    <line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" '
            f'y2="{_fmt(y2)}" stroke="{_EDGE_COLOR}" '
            f'stroke-width="{_fmt(e.thickness)}"/>'
        )
        mx, my = 0.5 * (x1 + x2), 0.5 * (y1 + y2)
        lines.append(
            f'    <text x="{_fmt(mx)}" y="{_fmt(my)}" dy="-3" '
            f'text-anchor="middle" font-family="{_FONT}" font-size="10" '
            f'fill="{_LABEL_COLOR}">{e.label}</text>'
        )
    lines.append("  </g>")

    lines.append('  <g id="nodes">')
    for i in range(styled.n):
        cx, cy = px[i]
        label = styled.node_labels[i]
        sectors = styled.node_sectors[i]
        lines.append(f'    <g id="node-{label}">')
        lines.append(
            f'      <circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(r)}" '
            f'fill="#FFFFFF" stroke="{_OUTLINE_COLOR}" stroke-width="1"/>'
        )
        if len(sectors) == 1:
            s = sectors[0]
            lines.append(
                f'      <circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(r)}" '
                f'fill="{s.color}" fill-opacity="{s.alpha:.4f}" '
                f'stroke="{_OUTLINE_COLOR}" stroke-width="0.75"/>'
            )
        else:
            total = len(sectors)
            for k, s in enumerate(sectors):
                lines.append(
                    f'      <path d="{_sector_path(cx, cy, r, k, total)}" '
                    f'fill="{s.color}" fill-opacity="{s.alpha:.4f}" '
                    f'stroke="{_OUTLINE_COLOR}" stroke-width="0.75"/>'
                )
        lines.append(
            f'      <text x="{_fmt(cx)}" y="{_fmt(cy)}" dy="0.35em" '
            f'text-anchor="middle" font-family="{_FONT}" font-size="12" '
            f'fill="{_LABEL_COLOR}">{label}</text>'
        )
        lines.append("    </g>")
    lines.append("  </g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def emit_dot(styled: StyledMoGram) -> str:
    """Render to an undirected DOT graph with pinned positions.

    Node statements carry ``pos="x,y!"`` (pixel coordinates) and the display
    label; edge statements carry ``penwidth`` and the similarity label.
    """
    px = pixel_positions(styled)
    lines = ["graph mogram {"]
    lines.append('  node [shape=circle, fixedsize=true, width=0.5];')
    for i in range(styled.n):
        x, y = px[i]
        label = styled.node_labels[i]
        lines.append(f'  n{i + 1} [label="{label}", pos="{_fmt(x)},{_fmt(-y)}!"];')
    for e in styled.edge_render:
        lines.append(
            f'  n{e.a} -- n{e.b} [penwidth={_fmt(e.thickness)}, label="{e.label}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
