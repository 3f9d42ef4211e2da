"""Dependency-free SVG rendering of parameter sweeps.

A sweep is a dict {"x": [...], "x_label": str, "y_label": str,
"series": {name: [...]}, "reference": {"name": str, "y": [...]}}; the
reference curve renders dashed.  Output is standalone, deterministic SVG.
"""

from __future__ import annotations

from .errors import ConfigError
from .report import atomic_write_text

_WIDTH, _HEIGHT = 640, 420
_MARGIN = 60
_COLORS = ["#1f6fb2", "#c43d3d", "#3d9950", "#8450a8", "#b8860b"]


def _scale(values, lo, hi, out_lo, out_hi):
    span = hi - lo
    if span <= 0:
        span = 1.0
    return [out_lo + (v - lo) / span * (out_hi - out_lo) for v in values]


def render_sweep_svg(sweep: dict) -> str:
    xs = list(sweep.get("x", []))
    series = dict(sweep.get("series", {}))
    if not xs or not series:
        raise ConfigError("report has no sweep to plot")
    reference = sweep.get("reference")
    all_y = [y for ys in series.values() for y in ys]
    if reference:
        all_y += list(reference["y"])
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(all_y + [0.0]), max(all_y)
    if y_hi == y_lo:
        y_hi = y_lo + 1.0

    left, right = _MARGIN, _WIDTH - 20
    top, bottom = 20, _HEIGHT - _MARGIN
    px = _scale(xs, x_lo, x_hi, left, right)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<line x1="{left}" y1="{bottom}" x2="{right}" y2="{bottom}" stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{bottom}" stroke="black"/>',
    ]
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        y_val = y_lo + frac * (y_hi - y_lo)
        y_pix = bottom + (top - bottom) * frac
        parts.append(
            f'<line x1="{left - 4}" y1="{y_pix:.1f}" x2="{left}" y2="{y_pix:.1f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{left - 8}" y="{y_pix + 4:.1f}" font-size="11" text-anchor="end">'
            f"{y_val:.3g}</text>"
        )
    for x_val, x_pix in zip(xs, px):
        parts.append(
            f'<line x1="{x_pix:.1f}" y1="{bottom}" x2="{x_pix:.1f}" y2="{bottom + 4}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{x_pix:.1f}" y="{bottom + 18}" font-size="11" text-anchor="middle">'
            f"{x_val:g}</text>"
        )
    parts.append(
        f'<text x="{(left + right) / 2:.1f}" y="{_HEIGHT - 12}" font-size="12" '
        f'text-anchor="middle">{sweep.get("x_label", "x")}</text>'
    )
    parts.append(
        f'<text x="16" y="{(top + bottom) / 2:.1f}" font-size="12" text-anchor="middle" '
        f'transform="rotate(-90 16 {(top + bottom) / 2:.1f})">{sweep.get("y_label", "y")}</text>'
    )

    def path(ys):
        py = _scale(ys, y_lo, y_hi, bottom, top)
        return " ".join(f"{x:.1f},{y:.1f}" for x, y in zip(px, py))

    legend_y = top + 8
    if reference:
        parts.append(
            f'<polyline points="{path(reference["y"])}" fill="none" stroke="#555" '
            f'stroke-dasharray="6 4"/>'
        )
        parts.append(
            f'<text x="{right - 6}" y="{legend_y}" font-size="11" text-anchor="end" '
            f'fill="#555">{reference.get("name", "reference")}</text>'
        )
        legend_y += 16
    for idx, (name, ys) in enumerate(sorted(series.items())):
        color = _COLORS[idx % len(_COLORS)]
        parts.append(f'<polyline points="{path(ys)}" fill="none" stroke="{color}"/>')
        py = _scale(ys, y_lo, y_hi, bottom, top)
        for x_pix, y_pix in zip(px, py):
            parts.append(f'<circle cx="{x_pix:.1f}" cy="{y_pix:.1f}" r="3" fill="{color}"/>')
        parts.append(
            f'<text x="{right - 6}" y="{legend_y}" font-size="11" text-anchor="end" '
            f'fill="{color}">{name}</text>'
        )
        legend_y += 16
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def emit_plot(report, path: str) -> None:
    """Write the report's sweep as SVG; errors (no file) if there is none."""
    sweep = report.aggregates.get("sweep") if hasattr(report, "aggregates") else None
    svg = render_sweep_svg(sweep or {})
    atomic_write_text(path, svg)
