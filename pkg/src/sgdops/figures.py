"""Two-dimensional chamber pictures as SVG or TikZ text.

Lattice points of the window are coloured by the sign pattern of the
support functions; points whose monomial lies in J are drawn as larger
red dots, and every facet line h_i = 0 is drawn across the window.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .lattice import ConeData, Sign, chamber_signature, signature_string
from .semigroup import MonomialIdeal

PALETTE = ("#4c72b0", "#dd8452", "#55a868", "#8172b3", "#937860",
           "#da8bc3", "#8c8c8c", "#ccb974", "#64b5cd")
J_COLOUR = "#c44e52"
SCALE = 24


@dataclass
class Dot:
    x: int
    y: int
    signature: str
    in_ideal: bool


def chamber_dots(cone: ConeData, ideal: MonomialIdeal,
                 window: Sequence[tuple[int, int]]) -> list[Dot]:
    if cone.k != 2:
        raise ValueError("chamber pictures need k = 2")
    (x0, x1), (y0, y1) = window
    dots = []
    for x in range(x0, x1 + 1):
        for y in range(y0, y1 + 1):
            sig = chamber_signature(cone, (x, y))
            dots.append(Dot(x, y, signature_string(sig), ideal.contains((x, y))))
    return dots


def _colours(dots: Sequence[Dot], cone: ConeData) -> dict[str, str]:
    """Chamber colours, with the cone itself always first."""
    inside = signature_string(tuple(Sign.POS for _ in cone.facets))
    keys = sorted({d.signature for d in dots}, key=lambda s: (s != inside, s))
    return {k: PALETTE[i % len(PALETTE)] for i, k in enumerate(keys)}


def _clip(normal: Sequence[int], window) -> tuple[tuple[Fraction, Fraction], ...] | None:
    """Endpoints of the line normal . p = 0 inside the window box."""
    (x0, x1), (y0, y1) = window
    a, b = normal
    pts = set()
    if b:
        for x in (x0, x1):
            y = Fraction(-a * x, b)
            if y0 <= y <= y1:
                pts.add((Fraction(x), y))
    if a:
        for y in (y0, y1):
            x = Fraction(-b * y, a)
            if x0 <= x <= x1:
                pts.add((x, Fraction(y)))
    if len(pts) < 2:
        return None
    ends = sorted(pts)
    return ends[0], ends[-1]


def svg(cone: ConeData, ideal: MonomialIdeal, window: Sequence[tuple[int, int]]) -> str:
    dots = chamber_dots(cone, ideal, window)
    colours = _colours(dots, cone)
    (x0, x1), (y0, y1) = window
    pad = 1
    width = (x1 - x0 + 2 * pad) * SCALE
    height = (y1 - y0 + 2 * pad) * SCALE

    def px(x, y):
        return float((x - x0 + pad) * SCALE), float((y1 - y + pad) * SCALE)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}">',
           f'<rect width="{width}" height="{height}" fill="white"/>']
    ax0, ay0 = px(x0, 0)
    ax1, _ = px(x1, 0)
    bx0, by0 = px(0, y0)
    _, by1 = px(0, y1)
    out.append(f'<line x1="{ax0}" y1="{ay0}" x2="{ax1}" y2="{ay0}" stroke="#bbbbbb"/>')
    out.append(f'<line x1="{bx0}" y1="{by0}" x2="{bx0}" y2="{by1}" stroke="#bbbbbb"/>')
    for f in cone.facets:
        seg = _clip(f.normal, window)
        if seg is None:
            continue
        (ux, uy), (vx, vy) = (px(*p) for p in seg)
        out.append(f'<line x1="{ux}" y1="{uy}" x2="{vx}" y2="{vy}" stroke="black" '
                   f'stroke-width="1.5"><title>{f.name}</title></line>')
    for d in dots:
        cx, cy = px(d.x, d.y)
        if d.in_ideal:
            out.append(f'<circle cx="{cx}" cy="{cy}" r="5" fill="{J_COLOUR}"/>')
        else:
            out.append(f'<circle cx="{cx}" cy="{cy}" r="3.5" fill="{colours[d.signature]}">'
                       f'<title>({d.x},{d.y}) {d.signature}</title></circle>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def tikz(cone: ConeData, ideal: MonomialIdeal, window: Sequence[tuple[int, int]]) -> str:
    dots = chamber_dots(cone, ideal, window)
    colours = _colours(dots, cone)
    (x0, x1), (y0, y1) = window
    out = ["\\begin{tikzpicture}[scale=0.4]"]
    for i, (sig, colour) in enumerate(colours.items()):
        out.append(f"\\definecolor{{ch{i}}}{{HTML}}{{{colour[1:]}}} % {sig}")
    out.append(f"\\definecolor{{inJ}}{{HTML}}{{{J_COLOUR[1:]}}}")
    names = {sig: f"ch{i}" for i, sig in enumerate(colours)}
    out.append(f"\\draw[gray!50] ({x0},0) -- ({x1},0);")
    out.append(f"\\draw[gray!50] (0,{y0}) -- (0,{y1});")
    for f in cone.facets:
        seg = _clip(f.normal, window)
        if seg is None:
            continue
        (ux, uy), (vx, vy) = seg
        out.append(f"\\draw[thick] ({float(ux):g},{float(uy):g}) -- ({float(vx):g},{float(vy):g})"
                   f" node[right] {{$h_{{{f.index}}}$}};")
    for d in dots:
        if d.in_ideal:
            out.append(f"\\fill[inJ] ({d.x},{d.y}) circle (5pt);")
        else:
            out.append(f"\\fill[{names[d.signature]}] ({d.x},{d.y}) circle (3pt);")
    out.append("\\end{tikzpicture}")
    return "\n".join(out) + "\n"
