"""
Minimal semilog BER-curve rendering to standalone SVG text.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from xml.sax.saxutils import escape

COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")

WIDTH, HEIGHT = 640, 480
LEFT, RIGHT, TOP, BOTTOM = 80, 20, 30, 60


class CurveError(ValueError):
    pass


@dataclass
class Curve:
    label: str
    ebn0: list[float]
    ber: list[float]
    ci: list[float] | None = None


def read_curve(path, label: str | None = None) -> Curve:
    """Load a simulation CSV; confidence half-widths are derived from the counts."""
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.DictReader(fh)
        if not reader.fieldnames or not {"ebn0_db", "ber"} <= set(reader.fieldnames):
            raise CurveError(f"{path}: missing ebn0_db/ber columns")
        ebn0, ber, ci = [], [], []
        for rowno, row in enumerate(reader, 2):
            try:
                x, y = float(row["ebn0_db"]), float(row["ber"])
                bits = int(row["info_bits"]) if row.get("info_bits") else 0
            except (TypeError, ValueError):
                raise CurveError(f"{path}: malformed row {rowno}: {row}") from None
            if not 0 <= y <= 1 or math.isnan(x):
                raise CurveError(f"{path}: malformed row {rowno}: BER {y} out of range")
            ebn0.append(x)
            ber.append(y)
            ci.append(1.96 * math.sqrt(y * (1 - y) / bits) if bits else 0.0)
    if not ebn0:
        raise CurveError(f"{path}: no data rows")
    return Curve(label or path.stem, ebn0, ber, ci)


def _sup(n: int) -> str:
    return str(n).translate(str.maketrans("-0123456789", "⁻⁰¹²³⁴⁵⁶⁷⁸⁹"))


def render_svg(curves: list[Curve], title: str = "", min_decade: int = -6) -> str:
    if not curves:
        raise CurveError("nothing to plot")
    xs = [x for c in curves for x in c.ebn0]
    positive = [y for c in curves for y in c.ber if y > 0]
    lo_dec = min([min_decade] + [math.floor(math.log10(y)) for y in positive])
    x0, x1 = math.floor(min(xs)), math.ceil(max(xs))
    if x1 == x0:
        x1 = x0 + 1
    pw, ph = WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM

    def px(x):
        return LEFT + (x - x0) / (x1 - x0) * pw

    def py(y):
        return TOP + (0 - math.log10(y)) / (0 - lo_dec) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for dec in range(0, lo_dec - 1, -1):
        y = py(10.0 ** dec)
        out.append(f'<line x1="{LEFT}" y1="{y:.1f}" x2="{LEFT + pw}" y2="{y:.1f}" stroke="#ddd"/>')
        out.append(f'<text class="ytick" x="{LEFT - 8}" y="{y + 4:.1f}" text-anchor="end">10{_sup(dec)}</text>')
    step = 1 if x1 - x0 <= 12 else 2 if x1 - x0 <= 24 else 5
    for xv in range(x0, x1 + 1, step):
        x = px(xv)
        out.append(f'<line x1="{x:.1f}" y1="{TOP}" x2="{x:.1f}" y2="{TOP + ph}" stroke="#eee"/>')
        out.append(f'<text x="{x:.1f}" y="{TOP + ph + 18}" text-anchor="middle">{xv}</text>')
    out.append(f'<text x="{LEFT + pw / 2}" y="{HEIGHT - 15}" text-anchor="middle">Eb/N0 (dB)</text>')
    out.append(f'<text x="20" y="{TOP + ph / 2}" text-anchor="middle" '
               f'transform="rotate(-90 20 {TOP + ph / 2})">BER</text>')
    if title:
        out.append(f'<text x="{LEFT + pw / 2}" y="20" text-anchor="middle">{escape(title)}</text>')

    for i, c in enumerate(curves):
        color = COLORS[i % len(COLORS)]
        pts = [(px(x), py(y)) for x, y in zip(c.ebn0, c.ber) if y > 0]
        if pts:
            path = " ".join(f"{x:.1f},{y:.1f}" for x, y in pts)
            out.append(f'<polyline class="curve" points="{path}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        for j, (x, y) in enumerate(zip(c.ebn0, c.ber)):
            if y <= 0:
                continue
            cx, cy = px(x), py(y)
            half = c.ci[j] if c.ci else 0.0
            if half > 0:
                top = py(min(y + half, 1.0))
                bot = py(max(y - half, 10.0 ** lo_dec))
                out.append(f'<line class="whisker" x1="{cx:.1f}" y1="{top:.1f}" x2="{cx:.1f}" '
                           f'y2="{bot:.1f}" stroke="{color}"/>')
            out.append(f'<circle cx="{cx:.1f}" cy="{cy:.1f}" r="3" fill="{color}"/>')
        ly = TOP + 15 + 18 * i
        lx = LEFT + pw - 200
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 25}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text class="legend" x="{lx + 32}" y="{ly + 4}">{escape(c.label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
