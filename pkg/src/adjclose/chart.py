"""Minimal deterministic SVG line charts (static SVG 1.1, no scripting).

Float arithmetic is fine here: coordinates are pixels, and identical
inputs always render byte-identical markup.
"""

from __future__ import annotations

import datetime as dt
from decimal import Decimal
from typing import Sequence

WIDTH, HEIGHT = 800, 500
MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 64, 16, 24, 48

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")

Series = Sequence[tuple[dt.date, Decimal]]


def render_svg_chart(series: Sequence[tuple[str, Series]], title: str = "") -> str:
    """Render named date/value series as one polyline chart."""
    points = [(d, v) for _, values in series for d, v in values]
    if not points:
        raise ValueError("nothing to plot")

    x_lo = min(d.toordinal() for d, _ in points)
    x_hi = max(d.toordinal() for d, _ in points)
    y_lo = min(float(v) for _, v in points)
    y_hi = max(float(v) for _, v in points)
    if x_hi == x_lo:
        x_hi += 1
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 1.0, y_hi + 1.0
    pad = (y_hi - y_lo) * 0.05
    y_lo, y_hi = y_lo - pad, y_hi + pad

    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def sx(date: dt.date) -> float:
        return MARGIN_LEFT + (date.toordinal() - x_lo) / (x_hi - x_lo) * plot_w

    def sy(value: float) -> float:
        return MARGIN_TOP + (y_hi - value) / (y_hi - y_lo) * plot_h

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if title:
        out.append(
            f'<text x="{WIDTH / 2:.1f}" y="16" text-anchor="middle" '
            f'font-family="sans-serif" font-size="13">{_escape(title)}</text>'
        )

    axis_color = "#444444"
    x0, y0 = MARGIN_LEFT, MARGIN_TOP + plot_h
    out.append(
        f'<line x1="{x0}" y1="{MARGIN_TOP}" x2="{x0}" y2="{y0}" stroke="{axis_color}"/>'
    )
    out.append(
        f'<line x1="{x0}" y1="{y0}" x2="{x0 + plot_w}" y2="{y0}" stroke="{axis_color}"/>'
    )

    for k in range(5):
        value = y_lo + (y_hi - y_lo) * k / 4
        y = sy(value)
        out.append(
            f'<line x1="{x0 - 4}" y1="{y:.2f}" x2="{x0}" y2="{y:.2f}" stroke="{axis_color}"/>'
        )
        out.append(
            f'<text x="{x0 - 8}" y="{y + 4:.2f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{value:.2f}</text>'
        )
    for k in range(5):
        ordinal = round(x_lo + (x_hi - x_lo) * k / 4)
        x = sx(dt.date.fromordinal(ordinal))
        label = dt.date.fromordinal(ordinal).isoformat()
        out.append(
            f'<line x1="{x:.2f}" y1="{y0}" x2="{x:.2f}" y2="{y0 + 4}" stroke="{axis_color}"/>'
        )
        out.append(
            f'<text x="{x:.2f}" y="{y0 + 18}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{label}</text>'
        )

    for index, (name, values) in enumerate(series):
        color = PALETTE[index % len(PALETTE)]
        coords = " ".join(f"{sx(d):.2f},{sy(float(v)):.2f}" for d, v in values)
        out.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"/>'
        )
        out.append(
            f'<text x="{x0 + 10}" y="{MARGIN_TOP + 14 + 16 * index}" '
            f'font-family="sans-serif" font-size="12" fill="{color}">{_escape(name)}</text>'
        )

    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
