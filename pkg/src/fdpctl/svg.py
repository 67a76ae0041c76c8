"""Tiny static SVG line charts (axes, polylines, legend) with no dependencies."""

from __future__ import annotations

__all__ = ["line_panels_svg"]

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
            "#8c564b", "#17becf", "#7f7f7f")

_PANEL_W = 420
_PANEL_H = 330
_MARGIN = {"left": 58, "right": 16, "top": 34, "bottom": 46}


def _ticks(lo, hi, count=5):
    if hi <= lo:
        hi = lo + 1.0
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]


def _fmt(x):
    return f"{x:.4g}"


def _panel(out, panel_idx, title, x_label, y_label, xs, series, rule=None):
    x0 = panel_idx * _PANEL_W + _MARGIN["left"]
    y0 = _MARGIN["top"]
    w = _PANEL_W - _MARGIN["left"] - _MARGIN["right"]
    h = _PANEL_H - _MARGIN["top"] - _MARGIN["bottom"]

    ys = [v for vals in series.values() for v in vals if v == v]  # drop NaN
    if rule is not None:
        ys.append(rule)
    y_lo = 0.0
    y_hi = max(ys) * 1.12 if ys else 1.0
    if y_hi <= y_lo:
        y_hi = y_lo + 1.0
    x_lo, x_hi = min(xs), max(xs)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0

    def sx(x):
        return x0 + (x - x_lo) / (x_hi - x_lo) * w

    def sy(y):
        return y0 + h - (y - y_lo) / (y_hi - y_lo) * h

    out.append(f'<rect x="{x0}" y="{y0}" width="{w}" height="{h}" '
               f'fill="none" stroke="#333" stroke-width="1"/>')
    out.append(f'<text x="{x0 + w / 2:.1f}" y="{y0 - 12}" text-anchor="middle" '
               f'font-size="14" font-weight="bold">{title}</text>')
    for tx in _ticks(x_lo, x_hi):
        out.append(f'<line x1="{sx(tx):.1f}" y1="{y0 + h}" x2="{sx(tx):.1f}" '
                   f'y2="{y0 + h + 5}" stroke="#333"/>')
        out.append(f'<text x="{sx(tx):.1f}" y="{y0 + h + 18}" '
                   f'text-anchor="middle" font-size="11">{_fmt(tx)}</text>')
    for ty in _ticks(y_lo, y_hi):
        out.append(f'<line x1="{x0 - 5}" y1="{sy(ty):.1f}" x2="{x0}" '
                   f'y2="{sy(ty):.1f}" stroke="#333"/>')
        out.append(f'<text x="{x0 - 8}" y="{sy(ty) + 4:.1f}" text-anchor="end" '
                   f'font-size="11">{_fmt(ty)}</text>')
    out.append(f'<text x="{x0 + w / 2:.1f}" y="{y0 + h + 36}" '
               f'text-anchor="middle" font-size="12">{x_label}</text>')
    out.append(f'<text x="{x0 - 44}" y="{y0 + h / 2:.1f}" font-size="12" '
               f'transform="rotate(-90 {x0 - 44} {y0 + h / 2:.1f})" '
               f'text-anchor="middle">{y_label}</text>')

    if rule is not None:
        out.append(f'<line x1="{x0}" y1="{sy(rule):.1f}" x2="{x0 + w}" '
                   f'y2="{sy(rule):.1f}" stroke="#555" stroke-width="1" '
                   f'stroke-dasharray="6,4"/>')

    for idx, (name, vals) in enumerate(series.items()):
        color = _PALETTE[idx % len(_PALETTE)]
        pts = " ".join(f"{sx(x):.1f},{sy(v):.1f}"
                       for x, v in zip(xs, vals) if v == v)
        if pts:
            out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                       f'stroke-width="1.8"/>')
        for x, v in zip(xs, vals):
            if v == v:
                out.append(f'<circle cx="{sx(x):.1f}" cy="{sy(v):.1f}" r="2.6" '
                           f'fill="{color}"/>')
        ly = y0 + 14 + 14 * idx
        lx = x0 + w - 120
        out.append(f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 22}" y2="{ly - 4}" '
                   f'stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 27}" y="{ly}" font-size="11">{name}</text>')


def line_panels_svg(panels, x_label: str, comment: str | None = None) -> str:
    """Render side-by-side panels; each is (title, y_label, xs, series, rule).

    ``series`` maps a legend name to y-values aligned with xs (NaN gaps are
    skipped); ``rule`` adds a dashed horizontal reference line or is None.
    """
    width = _PANEL_W * len(panels)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
           f'height="{_PANEL_H}" font-family="sans-serif">']
    if comment is not None:
        out.insert(0, "<!--\n" + comment.replace("--", "- -") + "\n-->")
    for idx, (title, y_label, xs, series, rule) in enumerate(panels):
        _panel(out, idx, title, x_label, y_label, xs, series, rule)
    out.append("</svg>")
    return "\n".join(out)
