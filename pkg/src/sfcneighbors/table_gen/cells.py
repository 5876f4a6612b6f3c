"""Facet labelling and per-cell facet geometry."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..geometry import extreme_indices, hull_facets, hyperplane_through

AXIS_NAMES = "xyzwuvts"
_SIDE_NAMES = {
    (0, 0): "left",
    (0, 1): "right",
    (1, 0): "down",
    (1, 1): "up",
    (2, 0): "bottom",
    (2, 1): "top",
}


@dataclass(frozen=True)
class FacetSpecification:
    """Per state: facet id -> 1-based column index set, plus vertex columns.

    ``convention`` is ``"cube-normal"`` when facet f of every state is the
    side with outward normal ``(-1)^(f+1) e_(f//2)``, else ``"lexicographic"``.
    """

    index_sets: tuple
    vertex_indices: tuple
    convention: str
    dim: int

    @property
    def counts(self) -> tuple:
        return tuple(len(s) for s in self.index_sets)

    @property
    def facet_count(self) -> int:
        return max(self.counts)

    def facet_name(self, f: int) -> str:
        if self.convention == "cube-normal":
            axis, side = divmod(f, 2)
            if (axis, side) in _SIDE_NAMES:
                return _SIDE_NAMES[axis, side]
            return f"{'-+'[side]}{AXIS_NAMES[axis] if axis < len(AXIS_NAMES) else axis}"
        return f"f{f}"

    def facet_names(self) -> list:
        return [self.facet_name(f) for f in range(self.facet_count)]

    def parse_facet(self, token) -> int:
        """Facet id from an integer or a name such as ``right``."""
        token = str(token).strip()
        names = self.facet_names()
        if token in names:
            return names.index(token)
        try:
            f = int(token)
        except ValueError:
            raise ValueError(f"unknown facet {token!r}; expected one of {names}") from None
        if not 0 <= f < self.facet_count:
            raise ValueError(f"facet {f} outside 0..{self.facet_count - 1}")
        return f


def _cube_labels(points, sets, d):
    """Map each facet set to 2*axis+side if the cell is an axis-aligned box."""
    if len(sets) != 2 * d:
        return None
    labels = {}
    for J in sets:
        cols = [points[i - 1] for i in J]
        hits = []
        for axis in range(d):
            values = {p[axis] for p in cols}
            if len(values) != 1:
                continue
            value = values.pop()
            lo = min(p[axis] for p in points)
            hi = max(p[axis] for p in points)
            if value == lo:
                hits.append(2 * axis)
            elif value == hi:
                hits.append(2 * axis + 1)
        if len(hits) != 1:
            return None
        labels[J] = hits[0]
    if sorted(labels.values()) != list(range(2 * d)):
        return None
    return labels


def label_facets(representatives, d: int) -> FacetSpecification:
    """Enumerate and label the facets of one representative cell per state."""
    per_state = [hull_facets(Q) for Q in representatives]
    cube = [_cube_labels(Q.cols, sets, d) for Q, sets in zip(representatives, per_state)]
    if all(c is not None for c in cube):
        ordered = [tuple(sorted(sets, key=lambda J: c[J])) for sets, c in zip(per_state, cube)]
        convention = "cube-normal"
    else:
        ordered = [tuple(sorted(sets, key=sorted)) for sets in per_state]
        convention = "lexicographic"
    vertices = []
    for Q, sets in zip(representatives, ordered):
        row = []
        for J in sets:
            cols = sorted(J)
            ext = extreme_indices([Q.cols[i - 1] for i in cols])
            row.append(tuple(cols[e] - 1 for e in ext))
        vertices.append(tuple(row))
    return FacetSpecification(tuple(ordered), tuple(vertices), convention, d)


def _centroid(points):
    n = len(points)
    return tuple(sum(c, Fraction(0)) / n for c in zip(*points))


class Cell:
    """A geometric node with its facets as (vertex set, outward plane)."""

    __slots__ = ("node", "facets", "lookup", "lo", "hi")

    def __init__(self, node, facet_spec: FacetSpecification):
        self.node = node
        pts = node.points.cols
        inside = _centroid(pts)
        self.facets = []
        for vidx in facet_spec.vertex_indices[node.state]:
            verts = [pts[i] for i in vidx]
            normal, offset = hyperplane_through(verts, inside)
            self.facets.append((frozenset(verts), normal, offset))
        self.lookup = {verts: f for f, (verts, _, _) in enumerate(self.facets)}
        self.lo = tuple(min(c) for c in zip(*pts))
        self.hi = tuple(max(c) for c in zip(*pts))

    @property
    def points(self):
        return self.node.points.cols


def overlap_rank(x: Cell, y: Cell) -> int:
    """Upper bound on dim(x & y) from bounding boxes; -1 when disjoint."""
    rank = 0
    for a, b, c, e in zip(x.lo, x.hi, y.lo, y.hi):
        lo, hi = max(a, c), min(b, e)
        if hi < lo:
            return -1
        rank += hi > lo
    return rank


def neighbor_facets(x: Cell, y: Cell) -> Optional[tuple]:
    """``(f, f2)`` when y is the geometric f-neighbor of x across y's facet f2.

    The shared facet must be a facet of both cells (equal vertex sets) and
    y must lie on the far side of x's facet plane; then the intersection of
    the two cells is exactly that facet.
    """
    if overlap_rank(x, y) < len(x.lo) - 1:
        return None
    for f, (verts, normal, offset) in enumerate(x.facets):
        f2 = y.lookup.get(verts)
        if f2 is None:
            continue
        if all(sum(a * q for a, q in zip(normal, p)) >= offset for p in y.points):
            return f, f2
    return None
