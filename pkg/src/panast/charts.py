"""SVG renderings of score vectors (Kiviat) and daily series (sparklines).

Output is plain text built by hand so that identical inputs give identical
bytes; numbers are printed with three decimals.
"""
from __future__ import annotations

import math
import warnings
from datetime import date
from typing import Iterable, Sequence
from xml.sax.saxutils import escape

from .errors import EmptyEvent
from .lexicon import SENTIMENTS, Sentiment
from .score import ScoreVector

KIVIAT_SIZE = 480
KIVIAT_RIM = 180.0
KIVIAT_RINGS = (-0.5, 0.0, 0.5, 1.0)

SPARK_LABEL_W = 120
SPARK_PLOT_W = 360
SPARK_ROW_H = 44
SPARK_PAD = 8
SPARK_AXIS_H = 24


def _num(x: float) -> str:
    s = f"{x:.3f}"
    return "0.000" if s == "-0.000" else s


def kiviat_radius(p: float, rim: float = KIVIAT_RIM) -> float:
    """Linear radial scale: -1 at the centre, +1 on the rim."""
    p = min(max(p, -1.0), 1.0)
    return rim * (p + 1.0) / 2.0


def _axis_angle(k: int) -> float:
    # first axis points up, then clockwise
    return -math.pi / 2 + 2 * math.pi * k / len(SENTIMENTS)


def _polar(cx, cy, r, k):
    a = _axis_angle(k)
    return cx + r * math.cos(a), cy + r * math.sin(a)


def _p_values(vector) -> list[float]:
    if isinstance(vector, ScoreVector):
        return vector.p()
    values = [float(v) for v in vector]
    if len(values) != len(SENTIMENTS):
        raise ValueError(f"expected {len(SENTIMENTS)} scores, got {len(values)}")
    return values


def render_kiviat(vector: ScoreVector | Sequence[float], title: str | None = None) -> str:
    ps = _p_values(vector)
    size = KIVIAT_SIZE
    c = size / 2
    rim = KIVIAT_RIM
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}" font-family="sans-serif" font-size="11">',
    ]
    if title:
        out.append(f"<title>{escape(title)}</title>")
        out.append(f'<text x="{_num(c)}" y="18.000" text-anchor="middle" font-size="14">{escape(title)}</text>')
    out.append('<g class="grid" fill="none" stroke="#cccccc" stroke-width="1">')
    for ring in KIVIAT_RINGS:
        r = kiviat_radius(ring, rim)
        pts = " ".join(f"{_num(x)},{_num(y)}" for x, y in (_polar(c, c, r, k) for k in range(len(SENTIMENTS))))
        out.append(f'<polygon class="ring" data-p="{_num(ring)}" points="{pts}"/>')
    out.append("</g>")
    out.append('<g class="axes" stroke="#888888" stroke-width="1">')
    for k, s in enumerate(SENTIMENTS):
        x, y = _polar(c, c, rim, k)
        out.append(f'<line class="axis" data-sentiment="{s.label}" x1="{_num(c)}" y1="{_num(c)}" '
                   f'x2="{_num(x)}" y2="{_num(y)}"/>')
    out.append("</g>")
    out.append('<g class="labels" fill="#333333">')
    for k, s in enumerate(SENTIMENTS):
        x, y = _polar(c, c, rim + 16, k)
        cos = math.cos(_axis_angle(k))
        anchor = "middle" if abs(cos) < 0.2 else ("start" if cos > 0 else "end")
        out.append(f'<text x="{_num(x)}" y="{_num(y + 4)}" text-anchor="{anchor}">{s.label}</text>')
    out.append("</g>")
    vertices = [_polar(c, c, kiviat_radius(p, rim), k) for k, p in enumerate(ps)]
    pts = " ".join(f"{_num(x)},{_num(y)}" for x, y in vertices)
    out.append(f'<polygon class="scores" fill="#3366cc" fill-opacity="0.25" stroke="#3366cc" '
               f'stroke-width="2" points="{pts}"/>')
    out.append('<g class="vertices" fill="#3366cc">')
    for s, p, (x, y) in zip(SENTIMENTS, ps, vertices):
        out.append(f'<circle data-sentiment="{s.label}" data-p="{p:.7f}" cx="{_num(x)}" cy="{_num(y)}" r="3"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _runs(days: list[date]) -> list[tuple[int, int]]:
    """Index ranges [i, j) of consecutive calendar days."""
    runs = []
    i = 0
    for j in range(1, len(days) + 1):
        if j == len(days) or (days[j] - days[j - 1]).days != 1:
            runs.append((i, j))
            i = j
    return runs


def render_sparklines(series, sentiments: Iterable[Sentiment] | None = None,
                      markers: Iterable[date] = (), title: str | None = None) -> str:
    """Stacked one-line charts of p per day over the event window.

    Days without data break the line; an isolated day is drawn as a dot.
    Marker dates outside the event window are dropped with a warning.
    """
    if not series.points:
        raise EmptyEvent("cannot draw an empty series")
    sentiments = list(SENTIMENTS if sentiments is None else sentiments)
    start, end = series.event.start, series.event.end
    span = max((end - start).days, 1)
    x0 = SPARK_LABEL_W
    top = SPARK_PAD + (20 if title else 0)
    width = SPARK_LABEL_W + SPARK_PLOT_W + SPARK_PAD
    height = top + SPARK_ROW_H * len(sentiments) + SPARK_AXIS_H

    def x_of(d: date) -> float:
        if start == end:
            return x0 + SPARK_PLOT_W / 2
        return x0 + SPARK_PLOT_W * (d - start).days / span

    kept_markers = []
    for m in sorted(set(markers)):
        if start <= m <= end:
            kept_markers.append(m)
        else:
            warnings.warn(f"marker {m.isoformat()} is outside the event window {start}..{end}", stacklevel=2)

    days = series.days()
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
    ]
    if title:
        out.append(f"<title>{escape(title)}</title>")
        out.append(f'<text x="{SPARK_PAD}" y="16.000" font-size="13">{escape(title)}</text>')
    for row, s in enumerate(sentiments):
        y_top = top + row * SPARK_ROW_H
        mid = y_top + SPARK_ROW_H / 2
        half = SPARK_ROW_H / 2 - 6

        def y_of(p: float) -> float:
            return mid - half * min(max(p, -1.0), 1.0)

        out.append(f'<g class="sparkline" data-sentiment="{s.label}">')
        out.append(f'<text x="{SPARK_PAD}" y="{_num(mid + 4)}">{s.label}</text>')
        out.append(f'<line class="zero" x1="{x0}" y1="{_num(mid)}" x2="{x0 + SPARK_PLOT_W}" y2="{_num(mid)}" '
                   f'stroke="#dddddd" stroke-width="1"/>')
        values = [p.vector[s].p for p in series.points]
        for i, j in _runs(days):
            if j - i == 1:
                out.append(f'<circle cx="{_num(x_of(days[i]))}" cy="{_num(y_of(values[i]))}" r="1.5" '
                           f'fill="#3366cc"/>')
            else:
                pts = " ".join(f"{_num(x_of(days[k]))},{_num(y_of(values[k]))}" for k in range(i, j))
                out.append(f'<polyline fill="none" stroke="#3366cc" stroke-width="1.2" points="{pts}"/>')
        out.append("</g>")
    plot_bottom = top + SPARK_ROW_H * len(sentiments)
    for m in kept_markers:
        x = _num(x_of(m))
        out.append(f'<line class="marker" data-date="{m.isoformat()}" x1="{x}" y1="{top}" x2="{x}" '
                   f'y2="{plot_bottom}" stroke="#cc3333" stroke-width="1" stroke-dasharray="3,2"/>')
    out.append(f'<text class="date" x="{x0}" y="{plot_bottom + 16}" text-anchor="start">{start.isoformat()}</text>')
    out.append(f'<text class="date" x="{x0 + SPARK_PLOT_W}" y="{plot_bottom + 16}" '
               f'text-anchor="end">{end.isoformat()}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
