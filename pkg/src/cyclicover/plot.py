"""SVG rendering of PL maps (400x400, axes labelled x and y)."""
from __future__ import annotations

from fractions import Fraction
from xml.sax.saxutils import escape

from .exactalg import format_rational
from .plgroup import PLMap

SIZE = 400
MARGIN = 40


def _coord(v: Fraction, ell: Fraction) -> float:
    return MARGIN + float(v / ell) * (SIZE - 2 * MARGIN)


def plmap_svg(f: PLMap, caption: str = "") -> str:
    ell = f.ell
    pts = " ".join(
        f"{_coord(x, ell):.3f},{SIZE - _coord(y, ell):.3f}" for x, y in f.breakpoints
    )
    lo, hi = MARGIN, SIZE - MARGIN
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>',
        f'<line x1="{lo}" y1="{hi}" x2="{hi + 15}" y2="{hi}" stroke="black"/>',
        f'<line x1="{lo}" y1="{hi}" x2="{lo}" y2="{lo - 15}" stroke="black"/>',
        f'<text x="{hi + 18}" y="{hi + 5}" font-size="14">x</text>',
        f'<text x="{lo - 5}" y="{lo - 20}" font-size="14">y</text>',
        f'<text x="{lo - 4}" y="{hi + 16}" font-size="11">0</text>',
        f'<text x="{hi - 6}" y="{hi + 16}" font-size="11">{escape(format_rational(ell))}</text>',
        f'<line x1="{lo}" y1="{hi}" x2="{hi}" y2="{lo}" stroke="#bbbbbb" stroke-dasharray="4 4"/>',
        f'<polyline points="{pts}" fill="none" stroke="black" stroke-width="3"/>',
    ]
    if caption:
        lines.append(f'<text x="{SIZE // 2}" y="{SIZE - 8}" font-size="12" '
                     f'text-anchor="middle">{escape(caption)}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
