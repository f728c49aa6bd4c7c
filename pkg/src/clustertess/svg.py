"""Tiny deterministic SVG writer.

No external renderer: golden-file tests need byte-identical output, so
elements are emitted in insertion order with fixed 6-decimal coordinate
formatting.
"""

from __future__ import annotations

from typing import Sequence, Tuple


def _n(x: float) -> str:
    return format(float(x), ".6f")


class SvgCanvas:
    def __init__(self, width: float, height: float):
        self.width = width
        self.height = height
        self._elements: list[str] = []

    def rect(self, x, y, w, h, stroke="black", fill="none", stroke_width=1.0, opacity=None):
        extra = f' fill-opacity="{_n(opacity)}"' if opacity is not None else ""
        self._elements.append(
            f'<rect x="{_n(x)}" y="{_n(y)}" width="{_n(w)}" height="{_n(h)}"'
            f' stroke="{stroke}" fill="{fill}" stroke-width="{_n(stroke_width)}"{extra}/>'
        )

    def circle(self, cx, cy, r, stroke="black", fill="none", stroke_width=1.0):
        self._elements.append(
            f'<circle cx="{_n(cx)}" cy="{_n(cy)}" r="{_n(r)}"'
            f' stroke="{stroke}" fill="{fill}" stroke-width="{_n(stroke_width)}"/>'
        )

    def line(self, x1, y1, x2, y2, stroke="black", stroke_width=1.0):
        self._elements.append(
            f'<line x1="{_n(x1)}" y1="{_n(y1)}" x2="{_n(x2)}" y2="{_n(y2)}"'
            f' stroke="{stroke}" stroke-width="{_n(stroke_width)}"/>'
        )

    def polygon(self, points: Sequence[Tuple[float, float]], stroke="black", fill="none", stroke_width=1.0):
        coords = " ".join(f"{_n(x)},{_n(y)}" for x, y in points)
        self._elements.append(
            f'<polygon points="{coords}" stroke="{stroke}" fill="{fill}"'
            f' stroke-width="{_n(stroke_width)}"/>'
        )

    def to_string(self) -> str:
        head = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{_n(self.width)}"'
            f' height="{_n(self.height)}" viewBox="0 0 {_n(self.width)} {_n(self.height)}">\n'
        )
        return head + "\n".join(self._elements) + "\n</svg>\n"
