"""SVG pictures of a 2D curve: cell outlines, the curve through cell centers, labels."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from xml.sax.saxutils import escape

from .errors import ContractError, ResourceError, UnsupportedDimensionError
from .geometry import extreme_indices, hull_facets

MAX_RENDER_CELLS = 100_000
_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class RenderOptions:
    level: int = 2
    show_labels: str = "none"  # none | positions | states
    label_base: int = 10  # 10 or the curve's branching factor
    curve_level_offset: int = 0  # 1 draws the curve one level finer than the cells
    cell_stroke: float = 1.0
    curve_stroke: float = 2.0
    canvas: int = 512
    margin: int = 16

    def check(self, branching: int):
        if self.level < 0:
            raise ContractError("level must be non-negative")
        if self.curve_level_offset not in (0, 1):
            raise ContractError("curve_level_offset must be 0 or 1")
        if self.show_labels not in ("none", "positions", "states"):
            raise ContractError("show_labels must be none, positions or states")
        if self.label_base not in (10, branching):
            raise ContractError(f"label_base must be 10 or {branching}")
        if self.label_base > len(_DIGITS):
            raise ContractError(f"cannot write digits in base {self.label_base}")
        if self.canvas <= 2 * self.margin:
            raise ContractError("canvas too small for the margin")


def decimal_text(x: Fraction) -> str:
    """Round once to 9 significant digits and print without exponent."""
    with localcontext() as ctx:
        ctx.prec = 9
        value = Decimal(x.numerator) / Decimal(x.denominator)
    text = format(value.normalize(), "f")
    return "0" if text in ("-0", "") else text


def _cells(spec, level):
    cells = [(spec.root_state, spec.root_points)]
    for _ in range(level):
        cells = [
            (spec.child_state[s][j], Q @ spec.matrix(s, j)) for s, Q in cells for j in range(spec.branching)
        ]
    return cells


def _ring(Q) -> list:
    """Hull vertices of a 2D point matrix in boundary order."""
    edges = []
    for facet in hull_facets(Q):
        pts = [Q.cols[i - 1] for i in sorted(facet)]
        ends = extreme_indices(pts)
        edges.append((pts[ends[0]], pts[ends[1]]))
    ring = [edges[0][0], edges[0][1]]
    unused = edges[1:]
    while unused:
        for k, (p, q) in enumerate(unused):
            if p == ring[-1] or q == ring[-1]:
                ring.append(q if p == ring[-1] else p)
                unused.pop(k)
                break
        else:
            raise ContractError("cell boundary is not a closed ring")
    return ring[:-1]


def _centroid(Q) -> tuple:
    verts = [Q.cols[i] for i in extreme_indices(list(Q.cols))]
    n = len(verts)
    return tuple(sum(c, Fraction(0)) / n for c in zip(*verts))


def _label(value: int, base: int, width: int) -> str:
    if base == 10:
        return str(value)
    out = []
    for _ in range(width):
        value, r = divmod(value, base)
        out.append(_DIGITS[r])
    return "".join(reversed(out)) or "0"


def render_svg(spec, options: RenderOptions = RenderOptions()) -> str:
    if spec.dim != 2:
        raise UnsupportedDimensionError("only 2D curves can be rendered")
    options.check(spec.branching)
    b = spec.branching
    curve_level = options.level + options.curve_level_offset
    if b ** curve_level > MAX_RENDER_CELLS:
        raise ResourceError(f"{b ** curve_level} cells exceed the render cap of {MAX_RENDER_CELLS}")

    root = list(spec.root_points.cols)
    lo = [min(c) for c in zip(*root)]
    hi = [max(c) for c in zip(*root)]
    extent = max(hi[0] - lo[0], hi[1] - lo[1])
    inner = options.canvas - 2 * options.margin
    scale = Fraction(inner) / extent

    def xy(p):
        x = (p[0] - lo[0]) * scale + options.margin
        y = (hi[1] - p[1]) * scale + options.margin  # y axis points up in the model
        return f"{decimal_text(x)},{decimal_text(y)}"

    cells = _cells(spec, options.level)
    curve_cells = cells if curve_level == options.level else _cells(spec, curve_level)
    size = options.canvas
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f"<title>{escape(spec.name or 'curve')} level {options.level}</title>",
        f'<g fill="none" stroke="#888888" stroke-width="{options.cell_stroke}">',
    ]
    for j, (_, Q) in enumerate(cells):
        out.append(f'<polygon id="c{j}" points="{" ".join(xy(p) for p in _ring(Q))}"/>')
    out.append("</g>")
    path = " ".join(xy(_centroid(Q)) for _, Q in curve_cells)
    out.append(
        f'<polyline fill="none" stroke="#c0392b" stroke-width="{options.curve_stroke}" '
        f'stroke-linejoin="round" points="{path}"/>'
    )
    if options.show_labels != "none":
        font = max(6, inner // (2 * max(1, round(len(cells) ** 0.5))) // 2)
        out.append(f'<g font-family="monospace" font-size="{font}" text-anchor="middle" '
                   'dominant-baseline="middle">')
        for j, (s, Q) in enumerate(cells):
            x, y = xy(_centroid(Q)).split(",")
            text = _label(j, options.label_base, options.level) if options.show_labels == "positions" \
                else spec.state_name(s)
            out.append(f'<text x="{x}" y="{y}">{escape(text)}</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
