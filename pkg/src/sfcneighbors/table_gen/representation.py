"""Pre-representations, representations and the regularity checks on them."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from ..geometry import (
    _affine_basis,
    affine_dimension,
    contains,
    intersection_dimension,
    matrix_pair_equivalence,
)
from ..tree_core import GeometricTree
from .cells import Cell, FacetSpecification, label_facets, neighbor_facets, overlap_rank


@dataclass(frozen=True)
class Violation:
    clause: str
    witness: dict
    message: str

    def __str__(self):
        where = ", ".join(f"{k}={v}" for k, v in self.witness.items())
        return f"{self.clause}: {self.message} ({where})"

    def to_dict(self) -> dict:
        return {"clause": self.clause, "witness": self.witness, "message": self.message}


@dataclass
class RegularityReport:
    violations: list = field(default_factory=list)
    checked: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def clauses(self) -> set:
        return {v.clause for v in self.violations}

    def verdict(self, clause: str) -> str:
        if clause not in self.checked:
            return "skipped"
        return "fail" if clause in self.clauses() else "ok"

    def extend(self, other: "RegularityReport") -> "RegularityReport":
        return RegularityReport(self.violations + other.violations, self.checked + other.checked)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "checked": list(self.checked),
            "violations": [v.to_dict() for v in self.violations],
        }

    def __str__(self):
        if self.ok:
            return "ok"
        return "\n".join(str(v) for v in self.violations)


def _where(node) -> str:
    return f"({node.level},{node.position})"


class _Children:
    """Memoized children of geometric nodes."""

    def __init__(self, spec):
        self.tree = GeometricTree(spec)
        self.cache = {}

    def __call__(self, node):
        key = (node.level, node.position)
        if key not in self.cache:
            self.cache[key] = [self.tree.child(node, i) for i in range(self.tree.b)]
        return self.cache[key]


def find_pre_representation(spec) -> tuple:
    """One geometric node per state, found breadth-first from the root."""
    children = _Children(spec)
    root = children.tree.root()
    found = {root.state: root}
    queue = deque([root])
    while queue and len(found) < spec.state_count:
        node = queue.popleft()
        for child in children(node):
            if child.state not in found:
                found[child.state] = child
                queue.append(child)
    missing = set(range(spec.state_count)) - set(found)
    if missing:
        raise ValueError(f"states {sorted(missing)} are unreachable")
    return tuple(found[s] for s in range(spec.state_count))


def check_pre_regularity(spec, pre) -> RegularityReport:
    """(P1') children equivalent to their state's representant, (P2') full dimension."""
    out = []
    for s, u in enumerate(pre):
        if affine_dimension(u.points.cols) != spec.dim:
            out.append(Violation("P2'", {"state": spec.state_name(s), "node": _where(u)},
                                 "cell is not full-dimensional"))
    tree = GeometricTree(spec)
    for s, u in enumerate(pre):
        for j in range(spec.branching):
            child = tree.child(u, j)
            if matrix_pair_equivalence(child.points, None, pre[child.state].points, None) is None:
                out.append(Violation(
                    "P1'",
                    {"state": spec.state_name(s), "child": j, "child_state": spec.state_name(child.state)},
                    "child point matrix is not equivalent to its state's representant",
                ))
    return RegularityReport(out, ("P1'", "P2'"))


def enumerate_facets(spec, pre) -> FacetSpecification:
    return label_facets([u.points for u in pre], spec.dim)


@dataclass
class Representation:
    """Representants ``pre[s]`` and neighbor pairs ``pairs[(s, s2, f)] = (v, w)``.

    w is the geometric f-neighbor of v, S(v) = s and S(w) = s2.  ``pairs``
    keeps discovery order, which makes everything downstream deterministic.
    """

    pre: tuple
    pairs: dict
    facets: FacetSpecification
    children: object = field(repr=False, default=None)
    cells: dict = field(repr=False, default_factory=dict)

    def cell(self, node) -> Cell:
        key = (node.level, node.position)
        if key not in self.cells:
            self.cells[key] = Cell(node, self.facets)
        return self.cells[key]

    def kids(self, node) -> list:
        return self.children(node)


def _sibling_neighbors(rep, parent):
    kids = rep.kids(parent)
    for x in kids:
        cx = rep.cell(x)
        for y in kids:
            if x is y:
                continue
            hit = neighbor_facets(cx, rep.cell(y))
            if hit:
                yield x, y, hit


def _cross_neighbors(rep, v, w):
    kids_w = rep.kids(w)
    for x in rep.kids(v):
        cx = rep.cell(x)
        for y in kids_w:
            hit = neighbor_facets(cx, rep.cell(y))
            if hit:
                yield x, y, hit


def find_representation(spec, pre, facets) -> Representation:
    """Fixpoint search for one witness pair per occurring (s, s2, f)."""
    rep = Representation(pre, {}, facets, _Children(spec))
    queue = deque()

    def offer(x, y, f):
        key = (x.state, y.state, f)
        if key not in rep.pairs:
            rep.pairs[key] = (x, y)
            queue.append(key)

    for u in pre:
        for x, y, (f, _) in _sibling_neighbors(rep, u):
            offer(x, y, f)
    while queue:
        v, w = rep.pairs[queue.popleft()]
        for x, y, (f, _) in _cross_neighbors(rep, v, w):
            offer(x, y, f)
    return rep


def _r1(spec, rep, x, y, f, out, context):
    v, w = rep.pairs[(x.state, y.state, f)]
    if matrix_pair_equivalence(v.points, w.points, x.points, y.points) is None:
        out.append(Violation(
            "R1'",
            {
                "pair": f"{_where(x)}-{_where(y)}",
                "representative": f"{_where(v)}-{_where(w)}",
                "states": f"{spec.state_name(x.state)},{spec.state_name(y.state)}",
                "facet": rep.facets.facet_name(f),
                "found_in": context,
            },
            "neighbor pair is not equivalent to the representative pair with the same states and facet",
        ))


def _touching(points, normal, offset):
    return [p for p in points if sum(a * q for a, q in zip(normal, p)) == offset]


def check_regularity(spec, rep: Representation, facets=None) -> RegularityReport:
    """(R1') equivalent neighbor pairs, (R2') containment, (R3') clean intersections."""
    d = spec.dim
    out = []
    # R2': children of each representant inside it
    contained = True
    for s, u in enumerate(rep.pre):
        for j, x in enumerate(rep.kids(u)):
            if not contains(u.points.cols, x.points.cols):
                contained = False
                out.append(Violation("R2'", {"state": spec.state_name(s), "child": j},
                                     "child cell is not contained in its parent"))
    # siblings
    for s, u in enumerate(rep.pre):
        kids = rep.kids(u)
        for a, x in enumerate(kids):
            cx = rep.cell(x)
            for y in kids[a + 1:]:
                hit = neighbor_facets(cx, rep.cell(y))
                if hit:
                    _r1(spec, rep, x, y, hit[0], out, f"children of {spec.state_name(s)}")
                    back = neighbor_facets(rep.cell(y), cx)
                    _r1(spec, rep, y, x, back[0], out, f"children of {spec.state_name(s)}")
                    continue
                if overlap_rank(cx, rep.cell(y)) < d - 1:
                    continue
                dim = intersection_dimension(x.points.cols, y.points.cols)
                if dim >= d - 1:
                    out.append(Violation(
                        "R3'",
                        {"state": spec.state_name(s), "children": f"{x.position % spec.branching},"
                         f"{y.position % spec.branching}", "dimension": dim},
                        "distinct siblings overlap" if dim == d
                        else "siblings meet in a (d-1)-dimensional set that is not a common facet",
                    ))
    # children across each representative pair
    for key, (v, w) in rep.pairs.items():
        f = key[2]
        _, normal, offset = rep.cell(v).facets[f]
        for x in rep.kids(v):
            cx = rep.cell(x)
            for y in rep.kids(w):
                hit = neighbor_facets(cx, rep.cell(y))
                if hit:
                    _r1(spec, rep, x, y, hit[0], out, f"pair {_where(v)}-{_where(w)}")
                    continue
                if overlap_rank(cx, rep.cell(y)) < d - 1:
                    continue
                if contained:
                    # both children lie inside their parents, so they can only
                    # meet inside the shared facet plane of v and w
                    fx = _touching(x.points.cols, normal, offset)
                    fy = _touching(y.points.cols, normal, offset)
                    if len(_affine_basis(fx)) < d or len(_affine_basis(fy)) < d:
                        continue
                    dim = intersection_dimension(fx, fy)
                else:
                    dim = intersection_dimension(x.points.cols, y.points.cols)
                if dim >= d - 1:
                    out.append(Violation(
                        "R3'",
                        {"pair": f"{_where(v)}-{_where(w)}", "children": f"{_where(x)},{_where(y)}",
                         "dimension": dim},
                        "cells meet in a (d-1)-dimensional set that is not a common facet"
                        if dim == d - 1 else "cells from neighboring parents overlap",
                    ))
    return RegularityReport(out, ("R1'", "R2'", "R3'"))
