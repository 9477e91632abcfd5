"""Bare-bones SVG line charts (axes, ticks, legend)."""

import math
from xml.sax.saxutils import escape

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf", "#7f7f7f"]
WIDTH, HEIGHT = 720, 480
LEFT, RIGHT, TOP, BOTTOM = 70, 230, 40, 55


def _ticks(lo, hi, count=6):
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / count
    step = 10 ** math.floor(math.log10(raw))
    for mult in (1, 2, 2.5, 5, 10):
        if raw <= mult * step:
            step *= mult
            break
    start = math.floor(lo / step) * step
    ticks = []
    t = start
    while t <= hi + 1e-9 * step:
        ticks.append(round(t, 10))
        t += step
    return ticks


def line_chart(series, title="", xlabel="", ylabel=""):
    """Render `series` as an SVG document string.

    Parameters
    ----------
    series : list of tuple
        ``(label, xs, ys, style, color_index)`` with style ``"line"`` or
        ``"markers"``. Non-finite points are skipped.
    """
    pts = [(x, y) for _, xs, ys, _, _ in series for x, y in zip(xs, ys) if math.isfinite(y)]
    if not pts:
        pts = [(0.0, 0.0), (1.0, 1.0)]
    xt = _ticks(min(p[0] for p in pts), max(p[0] for p in pts))
    yt = _ticks(min(0.0, min(p[1] for p in pts)), max(p[1] for p in pts))
    x0, x1, y0, y1 = xt[0], xt[-1], yt[0], yt[-1]
    pw, ph = WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM

    def sx(x):
        return LEFT + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return TOP + ph - (y - y0) / (y1 - y0) * ph

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
           f'font-family="sans-serif" font-size="12">',
           f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
           f'<text x="{LEFT + pw / 2:.1f}" y="22" text-anchor="middle" font-size="14">{escape(title)}</text>',
           f'<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>']
    for t in xt:
        out.append(f'<line x1="{sx(t):.1f}" y1="{TOP + ph}" x2="{sx(t):.1f}" y2="{TOP + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{sx(t):.1f}" y="{TOP + ph + 18}" text-anchor="middle">{t:g}</text>')
    for t in yt:
        out.append(f'<line x1="{LEFT - 5}" y1="{sy(t):.1f}" x2="{LEFT + pw}" y2="{sy(t):.1f}" stroke="#ddd"/>')
        out.append(f'<text x="{LEFT - 8}" y="{sy(t) + 4:.1f}" text-anchor="end">{t:g}</text>')
    out.append(f'<text x="{LEFT + pw / 2:.1f}" y="{HEIGHT - 15}" text-anchor="middle">{escape(xlabel)}</text>')
    out.append(f'<text x="18" y="{TOP + ph / 2:.1f}" text-anchor="middle" '
               f'transform="rotate(-90 18 {TOP + ph / 2:.1f})">{escape(ylabel)}</text>')
    for idx, (label, xs, ys, style, color) in enumerate(series):
        c = PALETTE[color % len(PALETTE)]
        good = [(sx(x), sy(y)) for x, y in zip(xs, ys) if math.isfinite(y)]
        if style == "line" and len(good) > 1:
            path = " ".join(f"{px:.1f},{py:.1f}" for px, py in good)
            out.append(f'<polyline points="{path}" fill="none" stroke="{c}" stroke-width="1.5"/>')
        else:
            for px, py in good:
                out.append(f'<circle cx="{px:.1f}" cy="{py:.1f}" r="3" fill="none" stroke="{c}"/>')
        ly = TOP + 10 + 16 * idx
        lx = WIDTH - RIGHT + 12
        if style == "line":
            out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 18}" y2="{ly}" stroke="{c}" stroke-width="1.5"/>')
        else:
            out.append(f'<circle cx="{lx + 9}" cy="{ly}" r="3" fill="none" stroke="{c}"/>')
        out.append(f'<text x="{lx + 24}" y="{ly + 4}" font-size="10">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
