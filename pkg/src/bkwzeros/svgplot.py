"""Dependency-free SVG rendering of zeros and limit sets."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .limitset import LimitSet, Window
from .rootfind import RootSet

SIZE = 560
MARGIN = 60
CURVE_COLOURS = ["#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2"]


def _ramp(k: int, total: int) -> str:
    # light blue for small n to dark blue for large n
    f = 0.0 if total <= 1 else k / (total - 1)
    r, g, b = (int(round(170 - 150 * f)), int(round(200 - 150 * f)), int(round(255 - 95 * f)))
    return f"#{r:02x}{g:02x}{b:02x}"


def _ticks(lo: float, hi: float) -> list[float]:
    span = hi - lo
    raw = span / 6
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 5, 10) if m * mag >= raw), default=mag)
    first = math.ceil(lo / step) * step
    out = []
    v = first
    while v <= hi + 1e-12:
        out.append(round(v, 10))
        v += step
    return out


def render_svg(W: Window, rootsets: list[RootSet] | None = None, L: LimitSet | None = None,
               title: str = "") -> str:
    """SVG document with zeros as dots, curves as paths and point limits as crosses.

    Output depends only on the inputs; coordinates are printed with fixed
    precision so identical inputs give identical files.
    """
    sx = SIZE / (W.re_max - W.re_min)
    sy = SIZE / (W.im_max - W.im_min)

    def X(re):
        return MARGIN + (re - W.re_min) * sx

    def Y(im):
        return MARGIN + (W.im_max - im) * sy

    total_w = SIZE + 2 * MARGIN + 150
    total_h = SIZE + 2 * MARGIN
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{total_w}" height="{total_h}" '
        f'viewBox="0 0 {total_w} {total_h}" font-family="sans-serif" font-size="11">',
        f'<rect x="0" y="0" width="{total_w}" height="{total_h}" fill="white"/>',
        f'<clipPath id="plot"><rect x="{MARGIN}" y="{MARGIN}" width="{SIZE}" height="{SIZE}"/></clipPath>',
        f'<rect x="{MARGIN}" y="{MARGIN}" width="{SIZE}" height="{SIZE}" fill="none" stroke="black"/>',
    ]
    if title:
        out.append(f'<text x="{MARGIN + SIZE / 2:.1f}" y="{MARGIN / 2:.1f}" text-anchor="middle" '
                   f'font-size="14">{escape(title)}</text>')
    # axes and ticks
    for v in _ticks(W.re_min, W.re_max):
        out.append(f'<line x1="{X(v):.2f}" y1="{MARGIN + SIZE}" x2="{X(v):.2f}" y2="{MARGIN + SIZE + 5}" stroke="black"/>')
        out.append(f'<text x="{X(v):.2f}" y="{MARGIN + SIZE + 18}" text-anchor="middle">{v:g}</text>')
    for v in _ticks(W.im_min, W.im_max):
        out.append(f'<line x1="{MARGIN - 5}" y1="{Y(v):.2f}" x2="{MARGIN}" y2="{Y(v):.2f}" stroke="black"/>')
        out.append(f'<text x="{MARGIN - 8}" y="{Y(v) + 4:.2f}" text-anchor="end">{v:g}</text>')
    if W.re_min < 0 < W.re_max:
        out.append(f'<line x1="{X(0):.2f}" y1="{MARGIN}" x2="{X(0):.2f}" y2="{MARGIN + SIZE}" stroke="#bbbbbb"/>')
    if W.im_min < 0 < W.im_max:
        out.append(f'<line x1="{MARGIN}" y1="{Y(0):.2f}" x2="{MARGIN + SIZE}" y2="{Y(0):.2f}" stroke="#bbbbbb"/>')
    out.append(f'<text x="{MARGIN + SIZE / 2:.1f}" y="{total_h - 12}" text-anchor="middle">Re</text>')
    out.append(f'<text x="16" y="{MARGIN + SIZE / 2:.1f}" text-anchor="middle">Im</text>')

    out.append('<g clip-path="url(#plot)">')
    legend: list[tuple[str, str]] = []
    if L is not None:
        pairs_seen: dict[tuple[int, int], str] = {}
        for c in L.curves:
            colour = pairs_seen.setdefault(c.pair, CURVE_COLOURS[len(pairs_seen) % len(CURVE_COLOURS)])
            pts = c.points
            if len(pts) == 1:
                out.append(f'<circle cx="{X(pts[0].real):.2f}" cy="{Y(pts[0].imag):.2f}" r="0.8" fill="{colour}"/>')
                continue
            d = " ".join(f"{X(z.real):.2f},{Y(z.imag):.2f}" for z in pts)
            out.append(f'<polyline points="{d}" fill="none" stroke="{colour}" stroke-width="1.5"/>')
        for pair, colour in pairs_seen.items():
            legend.append((colour, f"|l{pair[0]}| = |l{pair[1]}|"))
        crosses = [(z, "#000000") for z, _ in L.isolated] + [(z, "#555555") for z in L.persistent]
        for z, colour in crosses:
            x, y = X(z.real), Y(z.imag)
            out.append(f'<path d="M{x - 6:.2f},{y - 6:.2f} L{x + 6:.2f},{y + 6:.2f} '
                       f'M{x - 6:.2f},{y + 6:.2f} L{x + 6:.2f},{y - 6:.2f}" stroke="{colour}" stroke-width="2"/>')
        if L.isolated:
            legend.append(("#000000", "isolated limit"))
        if L.persistent:
            legend.append(("#555555", "persistent zero"))
    if rootsets:
        for k, rs in enumerate(rootsets):
            colour = _ramp(k, len(rootsets))
            inside = rs.roots[W.contains(rs.roots)]
            # data-count records every root found, including those outside the window
            out.append(f'<g class="zeros" data-n="{rs.n}" data-count="{len(rs.roots)}">')
            for z in inside:
                out.append(f'<circle cx="{X(z.real):.2f}" cy="{Y(z.imag):.2f}" r="1.8" fill="{colour}"/>')
            out.append("</g>")
        legend.append((_ramp(0, len(rootsets)), f"zeros, n = {rootsets[0].n}"))
        legend.append((_ramp(len(rootsets) - 1, len(rootsets)), f"zeros, n = {rootsets[-1].n}"))
    out.append("</g>")
    for k, (colour, text) in enumerate(legend):
        y = MARGIN + 10 + 18 * k
        out.append(f'<rect x="{MARGIN + SIZE + 12}" y="{y - 8}" width="10" height="10" fill="{colour}"/>')
        out.append(f'<text x="{MARGIN + SIZE + 28}" y="{y + 1}">{escape(text)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
