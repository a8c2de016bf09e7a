"""Static SVG figures of collections, pillars, and colorings."""

from __future__ import annotations

from fractions import Fraction

from .geometry import LCollection
from .pillars import HORIZONTAL, RAY, VERTICAL, Pillar

_PALETTE = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
]


def _f(value) -> float:
    return float(Fraction(value))


class SvgCanvas:
    """Collects drawing primitives in data coordinates, then emits one SVG
    with y flipped so the grounding line sits at the bottom."""

    def __init__(self):
        self.elements: list[str] = []
        self.min_x = self.min_y = float("inf")
        self.max_x = self.max_y = float("-inf")

    def _track(self, x, y):
        self.min_x = min(self.min_x, x)
        self.max_x = max(self.max_x, x)
        self.min_y = min(self.min_y, y)
        self.max_y = max(self.max_y, y)

    def line(self, x1, y1, x2, y2, color="#000", width=1.5, dash=None):
        self._track(x1, y1)
        self._track(x2, y2)
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        self.elements.append(
            f'<line x1="{x1:.2f}" y1="{-y1:.2f}" x2="{x2:.2f}" y2="{-y2:.2f}" '
            f'stroke="{color}" stroke-width="{width}" stroke-linecap="round"{dash_attr}/>'
        )

    def text(self, x, y, label, color="#333"):
        self._track(x, y)
        self.elements.append(
            f'<text x="{x:.2f}" y="{-y:.2f}" font-size="4" fill="{color}">{label}</text>'
        )

    def to_svg(self) -> str:
        if not self.elements:
            return '<svg xmlns="http://www.w3.org/2000/svg" width="10" height="10"/>'
        pad = 6.0
        x0, y0 = self.min_x - pad, -(self.max_y + pad)
        w = (self.max_x - self.min_x) + 2 * pad
        h = (self.max_y - self.min_y) + 2 * pad
        body = "\n".join(self.elements)
        return (
            f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{x0:.2f} {y0:.2f} '
            f'{w:.2f} {h:.2f}" width="{w * 8:.0f}" height="{h * 8:.0f}">\n{body}\n</svg>\n'
        )


def render_svg(
    collection: LCollection,
    pillars: list[Pillar] | None = None,
    color_of: dict | None = None,
    labels: bool = True,
) -> str:
    canvas = SvgCanvas()
    heights = [_f(s.height) for s in collection.shapes]
    top = max(heights, default=10.0) * 1.15 + 5

    for idx, s in enumerate(collection.shapes):
        if color_of and s.id in color_of:
            color = _PALETTE[(color_of[s.id] - 1) % len(_PALETTE)]
        else:
            color = _PALETTE[idx % len(_PALETTE)] if color_of is None else "#999"
        l, r, h = _f(s.left), _f(s.right), _f(s.height)
        canvas.line(l, 0, l, h, color=color)
        canvas.line(l, h, r, h, color=color)
        if labels:
            canvas.text(l + 0.5, h + 1.5, s.id, color=color)

    for pillar in pillars or []:
        for piece in pillar.pieces:
            if piece[0] == VERTICAL:
                canvas.line(_f(piece[1]), _f(piece[2]), _f(piece[1]), _f(piece[3]),
                            color="#222", width=0.8, dash="2,2")
            elif piece[0] == HORIZONTAL:
                canvas.line(_f(piece[3]), _f(piece[1]), _f(piece[2]), _f(piece[1]),
                            color="#222", width=0.8, dash="2,2")
            else:
                canvas.line(_f(piece[1]), _f(piece[2]), _f(piece[1]), top,
                            color="#222", width=0.8, dash="1,3")
        canvas.text(_f(pillar.base), -3.0, "*", color="#222")

    xs = [v for s in collection.shapes for v in (_f(s.left), _f(s.right))]
    if xs:
        canvas.line(min(xs) - 3, 0, max(xs) + 3, 0, color="#000", width=0.6)
    return canvas.to_svg()
