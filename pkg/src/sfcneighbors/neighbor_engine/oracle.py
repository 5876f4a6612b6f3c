"""Brute-force geometric neighbor search over all cells of one level.

Independent of the lookup tables: candidates come from an integer bounding
box filter over every cell, and each survivor is confirmed with the exact
face-intersection test from the geometry module.
"""

from __future__ import annotations

from math import lcm

import numpy as np

from ..errors import ContractError, OracleInconsistencyError, ResourceError
from ..geometry import hull_halfspaces, intersection_equals_face
from ..table_gen.tables import NONE

MAX_ORACLE_CELLS = 300_000


def _box(points):
    return tuple(min(c) for c in zip(*points)), tuple(max(c) for c in zip(*points))


class GeometricOracle:
    """All cells of one level with exact points and integer bounding boxes."""

    def __init__(self, spec, facets, level: int):
        b = spec.branching
        if b**level > MAX_ORACLE_CELLS:
            raise ResourceError(f"{b ** level} cells exceed the oracle cap of {MAX_ORACLE_CELLS}")
        self.spec, self.facets, self.level = spec, facets, level
        cells = [(spec.root_state, spec.root_points)]
        for _ in range(level):
            nxt = []
            for s, Q in cells:
                for j in range(b):
                    nxt.append((spec.child_state[s][j], Q @ spec.matrix(s, j)))
            cells = nxt
        self.states = [s for s, _ in cells]
        self.points = [Q for _, Q in cells]
        den = 1
        for Q in self.points:
            for p in Q.cols:
                for x in p:
                    den = lcm(den, x.denominator)
        self.scale = den
        scaled = np.array(
            [[[int(x * den) for x in p] for p in Q.cols] for Q in self.points], dtype=object
        )
        self.int_points = [tuple(tuple(int(x) for x in p) for p in cell) for cell in scaled]
        self._facet_boxes = {}
        lo, hi = scaled.min(axis=1), scaled.max(axis=1)
        if max(abs(int(x)) for x in np.concatenate([lo.ravel(), hi.ravel()])) < 2**62:
            lo, hi = lo.astype(np.int64), hi.astype(np.int64)
        self.lo, self.hi = lo, hi

    def _facet_points(self, j, f):
        s = self.states[j]
        if not 0 <= f < len(self.facets.index_sets[s]):
            raise ContractError(f"facet {f} outside 0..{len(self.facets.index_sets[s]) - 1}")
        index_set = self.facets.index_sets[s][f]
        return index_set, [self.points[j].cols[i - 1] for i in sorted(index_set)]

    def facet_box(self, y: int, f: int):
        key = (y, f)
        box = self._facet_boxes.get(key)
        if box is None:
            other = self.facets.index_sets[self.states[y]][f]
            box = _box([self.int_points[y][i - 1] for i in other])
            self._facet_boxes[key] = box
        return box

    def query(self, j: int, f: int) -> int:
        """Position of the geometric f-neighbor of cell j, or -1."""
        if not 0 <= j < len(self.points):
            raise ContractError(f"position {j} outside level {self.level}")
        index_set, face = self._facet_points(j, f)
        face_box = self.facet_box(j, f)
        Q = self.points[j]
        plane = next(h for h in hull_halfspaces(Q) if h.indices == index_set)
        flo = np.array(face_box[0], dtype=self.lo.dtype)
        fhi = np.array(face_box[1], dtype=self.lo.dtype)
        near = np.all((self.lo <= fhi) & (self.hi >= flo), axis=1)
        near[j] = False
        hits = []
        for y in np.flatnonzero(near):
            Qy = self.points[y]
            sy = self.states[y]
            for f2, other in enumerate(self.facets.index_sets[sy]):
                # equal convex sets have equal bounding boxes and share the plane
                if self.facet_box(y, f2) != face_box:
                    continue
                pts = [Qy.cols[i - 1] for i in other]
                if any(sum(a * q for a, q in zip(plane.normal, p)) != plane.offset for p in pts):
                    continue
                if intersection_equals_face(Q, index_set, Qy, other):
                    hits.append(int(y))
                    break
        if len(hits) > 1:
            raise OracleInconsistencyError(
                f"cell {j} has {len(hits)} geometric neighbors across facet {f}: {hits}"
            )
        return hits[0] if hits else NONE


def geometric_neighbor_oracle(spec, facets, level: int, position: int, f: int) -> int:
    """One-shot form of :class:`GeometricOracle`; build the class once for sweeps."""
    return GeometricOracle(spec, facets, level).query(position, f)
