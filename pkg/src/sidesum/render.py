"""Deterministic SVG rendering of tilings and packings.

Coordinates are scaled exactly by the canvas size; a value is printed as a
plain decimal integer when the scaled rational is integral and with 12
significant digits otherwise, so the output is byte-for-byte reproducible
for a given input and spec.  The y axis is flipped to mathematical
orientation (origin at the bottom-left).
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from .errors import DomainError
from .geometry import Tiling, verify
from .numerics import Rational, decimal_str, format_rational


@dataclass(frozen=True, slots=True)
class RenderSpec:
    canvas_px: int = 500
    stroke_width_px: Rational = mpq(1)
    label_sides: bool = False

    def __post_init__(self):
        if self.canvas_px < 50:
            raise DomainError("canvas must be at least 50px")
        object.__setattr__(self, "stroke_width_px", mpq(self.stroke_width_px))


def _px(value: Rational) -> str:
    value = mpq(value)
    if value.denominator == 1:
        return str(value.numerator)
    return decimal_str(value, 12)


def render_svg(t: Tiling, spec: RenderSpec = RenderSpec()) -> str:
    """One SVG rect per tile; packings render with their gaps visible."""
    v = verify(t)
    if not v:
        raise DomainError(f"refusing to render an invalid tiling: {v.detail}")
    c = spec.canvas_px
    stroke = _px(spec.stroke_width_px)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{c}" height="{c}" viewBox="0 0 {c} {c}">',
        f'<rect x="0" y="0" width="{c}" height="{c}" fill="white" stroke="black" stroke-width="{stroke}"/>',
    ]
    for tile in t.tiles:
        x = _px(tile.x * c)
        y = _px((1 - tile.y - tile.s) * c)
        side = _px(tile.s * c)
        lines.append(
            f'<rect x="{x}" y="{y}" width="{side}" height="{side}" '
            f'fill="none" stroke="black" stroke-width="{stroke}"/>'
        )
        if spec.label_sides:
            cx = _px((tile.x + tile.s / 2) * c)
            cy = _px((1 - tile.y - tile.s / 2) * c)
            size = _px(max(min(tile.s * c / 5, mpq(16)), mpq(6)))
            lines.append(
                f'<text x="{cx}" y="{cy}" font-size="{size}" text-anchor="middle" '
                f'dominant-baseline="middle">{format_rational(tile.s)}</text>'
            )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
