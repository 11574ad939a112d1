"""Tiny dependency-free SVG chart writer for the command-line plots."""

from __future__ import annotations

import math

import numpy as np

_WIDTH = 640
_HEIGHT = 420
_MARGIN_L = 70
_MARGIN_R = 20
_MARGIN_T = 40
_MARGIN_B = 50
_COLORS = ("#1f6fb4", "#c23b22", "#2e8b57")


def _fmt_tick(v: float) -> str:
    return f"{v:.3g}"


def _scale(lo: float, hi: float) -> tuple[float, float]:
    if hi <= lo:
        hi = lo + 1.0
    return lo, hi


def _x_pix(x, lo, hi):
    return _MARGIN_L + (x - lo) / (hi - lo) * (_WIDTH - _MARGIN_L - _MARGIN_R)


def _y_pix(y, lo, hi):
    return _HEIGHT - _MARGIN_B - (y - lo) / (hi - lo) * (_HEIGHT - _MARGIN_T - _MARGIN_B)


def _axes(parts, x_lo, x_hi, y_lo, y_hi, x_label, y_label, title, y_tick_fmt=_fmt_tick):
    parts.append(
        f'<rect x="{_MARGIN_L}" y="{_MARGIN_T}" width="{_WIDTH - _MARGIN_L - _MARGIN_R}" '
        f'height="{_HEIGHT - _MARGIN_T - _MARGIN_B}" fill="none" stroke="#333"/>'
    )
    for i in range(5):
        fx = x_lo + (x_hi - x_lo) * i / 4
        px = _x_pix(fx, x_lo, x_hi)
        parts.append(
            f'<line x1="{px:.1f}" y1="{_HEIGHT - _MARGIN_B}" x2="{px:.1f}" '
            f'y2="{_HEIGHT - _MARGIN_B + 5}" stroke="#333"/>'
        )
        parts.append(
            f'<text x="{px:.1f}" y="{_HEIGHT - _MARGIN_B + 18}" font-size="11" '
            f'text-anchor="middle">{_fmt_tick(fx)}</text>'
        )
        fy = y_lo + (y_hi - y_lo) * i / 4
        py = _y_pix(fy, y_lo, y_hi)
        parts.append(
            f'<line x1="{_MARGIN_L - 5}" y1="{py:.1f}" x2="{_MARGIN_L}" y2="{py:.1f}" stroke="#333"/>'
        )
        parts.append(
            f'<text x="{_MARGIN_L - 8}" y="{py + 4:.1f}" font-size="11" '
            f'text-anchor="end">{y_tick_fmt(fy)}</text>'
        )
    parts.append(
        f'<text x="{(_MARGIN_L + _WIDTH - _MARGIN_R) / 2}" y="{_HEIGHT - 12}" '
        f'font-size="12" text-anchor="middle">{x_label}</text>'
    )
    parts.append(
        f'<text x="16" y="{(_MARGIN_T + _HEIGHT - _MARGIN_B) / 2}" font-size="12" '
        f'text-anchor="middle" transform="rotate(-90 16 {(_MARGIN_T + _HEIGHT - _MARGIN_B) / 2})">'
        f"{y_label}</text>"
    )
    parts.append(
        f'<text x="{_WIDTH / 2}" y="22" font-size="14" text-anchor="middle">{title}</text>'
    )


def line_chart(path, series, *, title, x_label, y_label, hline=None, log_y=False):
    """Write a line chart; ``series`` is a list of (xs, ys, label) triples.

    With ``log_y`` the y axis is base-10 logarithmic and non-positive values
    are dropped from the plot.
    """
    cleaned = []
    for xs, ys, label in series:
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        if log_y:
            keep = ys > 0.0
            xs, ys = xs[keep], np.log10(ys[keep])
        if xs.size:
            cleaned.append((xs, ys, label))
    if cleaned:
        x_lo = min(float(xs.min()) for xs, _, _ in cleaned)
        x_hi = max(float(xs.max()) for xs, _, _ in cleaned)
        y_lo = min(float(ys.min()) for _, ys, _ in cleaned)
        y_hi = max(float(ys.max()) for _, ys, _ in cleaned)
    else:
        x_lo, x_hi, y_lo, y_hi = 0.0, 1.0, 0.0, 1.0
    if hline is not None and not log_y:
        y_lo = min(y_lo, hline)
        y_hi = max(y_hi, hline)
    pad = 0.05 * (y_hi - y_lo or 1.0)
    y_lo, y_hi = y_lo - pad, y_hi + pad
    x_lo, x_hi = _scale(x_lo, x_hi)
    y_lo, y_hi = _scale(y_lo, y_hi)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
    ]
    tick = (lambda v: f"1e{v:.2g}") if log_y else _fmt_tick
    _axes(parts, x_lo, x_hi, y_lo, y_hi, x_label, y_label, title, y_tick_fmt=tick)
    if hline is not None and not log_y:
        py = _y_pix(hline, y_lo, y_hi)
        parts.append(
            f'<line x1="{_MARGIN_L}" y1="{py:.1f}" x2="{_WIDTH - _MARGIN_R}" y2="{py:.1f}" '
            f'stroke="#777" stroke-dasharray="6 4"/>'
        )
    for idx, (xs, ys, label) in enumerate(cleaned):
        color = _COLORS[idx % len(_COLORS)]
        points = " ".join(
            f"{_x_pix(x, x_lo, x_hi):.1f},{_y_pix(y, y_lo, y_hi):.1f}"
            for x, y in zip(xs, ys)
        )
        parts.append(
            f'<polyline points="{points}" fill="none" stroke="{color}" stroke-width="1.3"/>'
        )
        if label:
            parts.append(
                f'<text x="{_WIDTH - _MARGIN_R - 6}" y="{_MARGIN_T + 16 + 14 * idx}" '
                f'font-size="11" text-anchor="end" fill="{color}">{label}</text>'
            )
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(parts) + "\n")


def _downsample(values: np.ndarray, limit: int = 220) -> tuple[np.ndarray, int, int]:
    rows, cols = values.shape
    row_step = max(1, math.ceil(rows / limit))
    col_step = max(1, math.ceil(cols / limit))
    trimmed = values[: (rows // row_step) * row_step, : (cols // col_step) * col_step]
    blocked = trimmed.reshape(
        trimmed.shape[0] // row_step, row_step, trimmed.shape[1] // col_step, col_step
    ).mean(axis=(1, 3))
    return blocked, row_step, col_step


def heatmap(path, values, *, x0, title, x_label, y_label):
    """Write a space-time heatmap; ``values[t][i]`` is the probability at
    site ``x0 + i`` after ``t`` steps. Large fields are block-averaged down
    to a drawable cell count."""
    values = np.asarray(values, dtype=float)
    blocked, row_step, col_step = _downsample(values)
    peak = float(blocked.max()) or 1.0
    # Square-root intensity keeps faint ballistic fronts visible next to the
    # bright localized column.
    shade = np.sqrt(np.clip(blocked / peak, 0.0, 1.0))
    rows, cols = blocked.shape
    x_lo, x_hi = x0, x0 + values.shape[1]
    y_lo, y_hi = 0, values.shape[0]
    cell_w = (_WIDTH - _MARGIN_L - _MARGIN_R) / cols
    cell_h = (_HEIGHT - _MARGIN_T - _MARGIN_B) / rows
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
    ]
    for r in range(rows):
        # Time increases upward, matching the usual space-time orientation.
        y = _HEIGHT - _MARGIN_B - (r + 1) * cell_h
        for c in range(cols):
            s = shade[r, c]
            if s <= 0.0:
                continue
            red = round(255 - 247 * s)
            green = round(255 - 207 * s)
            blue = round(255 - 148 * s)
            parts.append(
                f'<rect x="{_MARGIN_L + c * cell_w:.2f}" y="{y:.2f}" '
                f'width="{cell_w + 0.3:.2f}" height="{cell_h + 0.3:.2f}" '
                f'fill="rgb({red},{green},{blue})"/>'
            )
    _axes(parts, x_lo, x_hi, y_lo, y_hi, x_label, y_label, title)
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(parts) + "\n")
