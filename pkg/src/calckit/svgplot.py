"""Minimal hand-emitted SVG line charts.

No plotting dependency: a fixed-size polyline chart with axes, tick labels,
and a legend, with all coordinates formatted through %.6g so output bytes
are stable for golden-file comparisons.
"""

from __future__ import annotations

import numpy as np

WIDTH, HEIGHT = 640, 400
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 60, 20, 40, 45
PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]


def _fmt(x: float) -> str:
    return f"{float(x):.6g}"


def line_chart(path, title: str, t, series) -> None:
    """Write a chart of (label, values) pairs over the abscissa t."""
    t = np.asarray(t, dtype=float)
    series = [(label, np.asarray(y, dtype=float)) for label, y in series]
    ymin = min(float(y.min()) for _, y in series)
    ymax = max(float(y.max()) for _, y in series)
    if ymax == ymin:
        ymax, ymin = ymax + 1.0, ymin - 1.0
    x0, x1 = float(t[0]), float(t[-1])
    plot_w = WIDTH - MARGIN_L - MARGIN_R
    plot_h = HEIGHT - MARGIN_T - MARGIN_B

    def px(x):
        return MARGIN_L + (x - x0) / (x1 - x0) * plot_w

    def py(y):
        return MARGIN_T + (ymax - y) / (ymax - ymin) * plot_h

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH // 2}" y="24" font-family="sans-serif" font-size="16" '
        f'text-anchor="middle">{title}</text>',
        # axes
        f'<line x1="{MARGIN_L}" y1="{MARGIN_T}" x2="{MARGIN_L}" '
        f'y2="{HEIGHT - MARGIN_B}" stroke="black"/>',
        f'<line x1="{MARGIN_L}" y1="{HEIGHT - MARGIN_B}" x2="{WIDTH - MARGIN_R}" '
        f'y2="{HEIGHT - MARGIN_B}" stroke="black"/>',
        # tick labels at the data extremes
        f'<text x="{MARGIN_L}" y="{HEIGHT - MARGIN_B + 18}" font-family="sans-serif" '
        f'font-size="11" text-anchor="middle">{_fmt(x0)}</text>',
        f'<text x="{WIDTH - MARGIN_R}" y="{HEIGHT - MARGIN_B + 18}" '
        f'font-family="sans-serif" font-size="11" text-anchor="middle">{_fmt(x1)}</text>',
        f'<text x="{MARGIN_L - 6}" y="{HEIGHT - MARGIN_B + 4}" font-family="sans-serif" '
        f'font-size="11" text-anchor="end">{_fmt(ymin)}</text>',
        f'<text x="{MARGIN_L - 6}" y="{MARGIN_T + 4}" font-family="sans-serif" '
        f'font-size="11" text-anchor="end">{_fmt(ymax)}</text>',
        f'<text x="{WIDTH // 2}" y="{HEIGHT - 8}" font-family="sans-serif" '
        f'font-size="12" text-anchor="middle">t</text>',
    ]
    for idx, (label, y) in enumerate(series):
        color = PALETTE[idx % len(PALETTE)]
        pts = " ".join(f"{_fmt(px(float(xv)))},{_fmt(py(float(yv)))}"
                       for xv, yv in zip(t, y))
        lines.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                     f'stroke-width="1.5"/>')
        ly = MARGIN_T + 16 * idx + 12
        lx = WIDTH - MARGIN_R - 110
        lines.append(f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 22}" y2="{ly - 4}" '
                     f'stroke="{color}" stroke-width="1.5"/>')
        lines.append(f'<text x="{lx + 28}" y="{ly}" font-family="sans-serif" '
                     f'font-size="12">{label}</text>')
    lines.append("</svg>")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
