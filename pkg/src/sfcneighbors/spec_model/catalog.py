"""Builtin curve models."""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable

from ..errors import CatalogError, SpecValidationError
from ..geometry import PointMatrix, _solve, matrix_pair_equivalence
from .kd import (
    SignedPermutation,
    corner_bits,
    kd_to_b_spec,
    orientation_closure,
    single_state_local,
)
from .model import BSpecification, BStateSystem, validate_spec

SWAP_XY = SignedPermutation((1, 0), (False, False))
ANTI_DIAGONAL = SignedPermutation((1, 0), (True, True))


def _checked(spec: BSpecification) -> BSpecification:
    report = validate_spec(spec)
    if not report.ok:
        raise SpecValidationError(f"builtin {spec.name} is invalid:\n{report}", report)
    return spec


def morton(d: int = 2) -> BSpecification:
    """Z-order: one state, children in binary order with x in the lowest bit."""
    order = [corner_bits(c, d) for c in range(2**d)]
    frames = [SignedPermutation.identity(d)] * len(order)
    kd = orientation_closure(order, frames, 2, d, names=lambda T: "M")
    return _checked(kd_to_b_spec(kd, name=f"morton{d}"))


HILBERT2D_ORDER = ((0, 0), (0, 1), (1, 1), (1, 0))
HILBERT2D_FRAMES = (SWAP_XY, SignedPermutation.identity(2), SignedPermutation.identity(2), ANTI_DIAGONAL)
_HILBERT2D_NAMES = {
    SignedPermutation.identity(2): "H",
    SWAP_XY: "A",
    ANTI_DIAGONAL: "B",
    SignedPermutation((0, 1), (True, True)): "R",
}


def hilbert2d(mode: str = "global") -> BSpecification:
    if mode == "global":
        kd = orientation_closure(HILBERT2D_ORDER, HILBERT2D_FRAMES, 2, 2, names=_HILBERT2D_NAMES.get)
    elif mode == "local":
        kd = single_state_local(HILBERT2D_ORDER, HILBERT2D_FRAMES, 2, 2, name="G")
    else:
        raise CatalogError(f"unknown mode {mode!r}")
    return _checked(kd_to_b_spec(kd, name=f"hilbert2d_{mode}"))


def _gray_order(d: int) -> list:
    return [corner_bits(i ^ (i >> 1), d) for i in range(2**d)]


def _group_order(frames) -> int:
    seen = {SignedPermutation.identity(frames[0].dim)}
    queue = deque(seen)
    while queue:
        g = queue.popleft()
        for f in frames:
            h = g.compose(f)
            if h not in seen:
                seen.add(h)
                queue.append(h)
    return len(seen)


@lru_cache(maxsize=None)
def hilbert3d_frames(preferred_order: int = 12) -> tuple:
    """Backtracking search for the child frames of a 3D Hilbert pattern.

    The children follow the binary reflected Gray code, so consecutive
    subcubes share a facet.  The pattern curve runs from corner (0,0,0) to
    corner (0,0,1); each child frame must map that entry/exit edge onto a
    segment that starts where the previous child ended.  Among all solutions
    the first (in a fixed enumeration order) whose generated symmetry group
    has ``preferred_order`` elements is returned, else the first solution.
    """
    d = 3
    order = _gray_order(d)
    entry, exit_ = (0, 0, 0), (0, 0, 1)
    symmetries = SignedPermutation.all(d)
    solutions = []

    def point(cell, corner):
        return tuple(Fraction(c + x, 2) for c, x in zip(cell, corner))

    def search(j, current, chosen):
        if j == len(order):
            solutions.append(tuple(chosen))
            return
        cell = order[j]
        for T in symmetries:
            if point(cell, T.apply_unit(entry)) != current:
                continue
            out = point(cell, T.apply_unit(exit_))
            if j + 1 < len(order):
                nxt = order[j + 1]
                if any(2 * o - c not in (0, 1) for o, c in zip(out, nxt)):
                    continue
            elif out != tuple(Fraction(x) for x in exit_):
                continue
            chosen.append(T)
            search(j + 1, out, chosen)
            chosen.pop()

    search(0, tuple(Fraction(x) for x in entry), [])
    if not solutions:
        raise CatalogError("no 3D Hilbert pattern found")
    for frames in solutions:
        if _group_order(frames) == preferred_order:
            return frames
    return solutions[0]


def hilbert3d() -> BSpecification:
    frames = hilbert3d_frames()
    kd = orientation_closure(_gray_order(3), frames, 2, 3)
    kd = _named(kd, [f"H{i}" for i in range(kd.state_count)])
    return _checked(kd_to_b_spec(kd, name="hilbert3d_global"))


def _named(kd, names):
    from dataclasses import replace

    return replace(kd, state_names=tuple(names))


def peano_order(d: int) -> list:
    """Boustrophedon order of the 3^d subcubes, first axis running fastest."""
    cells = []
    for n in range(3**d):
        digits = [(n // 3**i) % 3 for i in range(d)]
        cell = [0] * d
        parity = 0
        for i in reversed(range(d)):
            cell[i] = digits[i] if parity % 2 == 0 else 2 - digits[i]
            parity += cell[i]
        cells.append(tuple(cell))
    return cells


def peano_frames(d: int) -> list:
    """Child frames: axis i is reflected iff the other coordinates have odd sum."""
    frames = []
    for cell in peano_order(d):
        total = sum(cell)
        flip = tuple((total - c) % 2 == 1 for c in cell)
        frames.append(SignedPermutation(tuple(range(d)), flip))
    return frames


def _peano_name(T: SignedPermutation) -> str:
    if T.dim == 2:
        return {(False, False): "P", (True, False): "Q", (False, True): "R", (True, True): "S"}[
            T.flip
        ]
    return "".join("-" if f else "+" for f in T.flip)


def peano(d: int = 2, mode: str = "global") -> BSpecification:
    order, frames = peano_order(d), peano_frames(d)
    if mode == "global":
        kd = orientation_closure(order, frames, 3, d, names=_peano_name)
    elif mode == "local":
        kd = single_state_local(order, frames, 3, d, name="G")
    else:
        raise CatalogError(f"unknown mode {mode!r}")
    return _checked(kd_to_b_spec(kd, name=f"peano{d}_{mode}"))


def _sierpinski2d_local() -> BSpecification:
    half = Fraction(1, 2)
    # columns of a cell: (entry vertex, right-angle vertex, exit vertex)
    first = ((1, half, 0), (0, 0, 1), (0, half, 0))
    second = ((0, half, 0), (1, 0, 0), (0, half, 1))
    return BSpecification(
        system=BStateSystem(1, ((0, 0),), 2),
        dim=2,
        vertex_counts=(3,),
        root_points=PointMatrix(((0, 0), (1, 0), (1, 1))),
        matrices=((first, second),),
        state_names=("G",),
        name="sierpinski2d_local",
    )


def _linear_class(A) -> tuple:
    """Canonical representative of {c A : c > 0}."""
    scale = max(abs(x) for row in A for x in row)
    return tuple(tuple(x / scale for x in row) for row in A)


def refine_by_orientation(spec: BSpecification, prefix: str = "G", max_states: int = 256):
    """Split every state by the orientation of the cell relative to the root.

    The geometry is unchanged; a refined state is (old state, linear part of
    the affine map from the old state's reference cell, up to positive
    scale).  This turns a local model into a global one.
    """
    b = spec.branching
    reference = {spec.root_state: spec.root_points}
    queue = deque([(spec.root_state, spec.root_points)])
    while queue:
        s, Q = queue.popleft()
        for j in range(b):
            t = spec.child_state[s][j]
            if t not in reference:
                child = Q @ spec.matrix(s, j)
                reference[t] = child
                queue.append((t, child))
    step = {}
    for s, Q in reference.items():
        for j in range(b):
            t = spec.child_state[s][j]
            tau = matrix_pair_equivalence(reference[t], None, Q @ spec.matrix(s, j), None)
            if tau is None:
                raise CatalogError("cells of one state are not affinely equivalent")
            step[s, j] = tau.A
    identity = tuple(tuple(Fraction(int(i == j)) for j in range(spec.dim)) for i in range(spec.dim))
    start = (spec.root_state, _linear_class(identity))
    states, index = [start], {start: 0}
    table = []
    queue = deque([start])
    while queue:
        s, A = queue.popleft()
        row = []
        for j in range(b):
            t = spec.child_state[s][j]
            B = tuple(
                tuple(sum(A[r][m] * step[s, j][m][c] for m in range(spec.dim)) for c in range(spec.dim))
                for r in range(spec.dim)
            )
            key = (t, _linear_class(B))
            if key not in index:
                if len(states) >= max_states:
                    raise CatalogError("orientation refinement does not close")
                index[key] = len(states)
                states.append(key)
                queue.append(key)
            row.append(index[key])
        table.append(tuple(row))
    return BSpecification(
        system=BStateSystem(len(states), tuple(table), b),
        dim=spec.dim,
        vertex_counts=tuple(spec.vertex_counts[s] for s, _ in states),
        root_points=spec.root_points,
        matrices=tuple(spec.matrices[s] for s, _ in states),
        state_names=tuple(f"{prefix}{i}" for i in range(len(states))),
        name=spec.name,
    )


def sierpinski2d(mode: str = "local") -> BSpecification:
    local = _sierpinski2d_local()
    if mode == "local":
        return _checked(local)
    if mode == "global":
        from dataclasses import replace

        return _checked(replace(refine_by_orientation(local, "T"), name="sierpinski2d_global"))
    raise CatalogError(f"unknown mode {mode!r}")


def gosper2d() -> BSpecification:
    """Gosper hexagons in lattice coordinates (an affine image of the regular hexagon).

    Children are the root hexagon shrunk by the lattice map of norm 7 and
    placed at the centre and its six neighbours.  The child order is not the
    flowsnake order; this entry only serves as a containment counterexample.
    """
    third = Fraction(1, 3)
    hexagon = [(2 * third, third), (third, 2 * third), (-third, third),
               (-2 * third, -third), (-third, -2 * third), (third, -third)]
    units = [(0, 0), (1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)]

    def shrink(p):
        a, b = p
        return (Fraction(2 * a + b, 7), Fraction(-a + 3 * b, 7))

    anchors = [0, 2, 4]
    A = [[hexagon[i][r] for i in anchors] for r in range(2)] + [[1, 1, 1]]
    A = tuple(tuple(Fraction(x) for x in row) for row in A)
    matrices = []
    for u in units:
        centre = shrink(u)
        cols = []
        for v in hexagon:
            sv = shrink(v)
            p = (sv[0] + centre[0], sv[1] + centre[1])
            lam = _solve(A, (p[0], p[1], Fraction(1)))
            col = [Fraction(0)] * 6
            for i, w in zip(anchors, lam):
                col[i] = w
            cols.append(col)
        matrices.append(tuple(zip(*cols)))
    table = ((0, 1, 1, 0, 0, 0, 1), (0, 1, 1, 1, 0, 0, 1))
    return _checked(
        BSpecification(
            system=BStateSystem(2, table, 7),
            dim=2,
            vertex_counts=(6, 6),
            root_points=PointMatrix(tuple(hexagon)),
            matrices=(tuple(matrices), tuple(matrices)),
            state_names=("A", "B"),
            name="gosper2d",
        )
    )


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    parameters: dict
    builder: Callable

    def build(self) -> BSpecification:
        return self.builder(**self.parameters)


CATALOG = {
    "morton2": CatalogEntry("morton2", {"d": 2}, morton),
    "morton3": CatalogEntry("morton3", {"d": 3}, morton),
    "hilbert2d_global": CatalogEntry("hilbert2d_global", {"mode": "global"}, hilbert2d),
    "hilbert2d_local": CatalogEntry("hilbert2d_local", {"mode": "local"}, hilbert2d),
    "hilbert3d_global": CatalogEntry("hilbert3d_global", {}, hilbert3d),
    "peano2_global": CatalogEntry("peano2_global", {"d": 2, "mode": "global"}, peano),
    "peano2_local": CatalogEntry("peano2_local", {"d": 2, "mode": "local"}, peano),
    "peano3_global": CatalogEntry("peano3_global", {"d": 3, "mode": "global"}, peano),
    "peano3_local": CatalogEntry("peano3_local", {"d": 3, "mode": "local"}, peano),
    "sierpinski2d_local": CatalogEntry("sierpinski2d_local", {"mode": "local"}, sierpinski2d),
    "sierpinski2d_global": CatalogEntry("sierpinski2d_global", {"mode": "global"}, sierpinski2d),
    "gosper2d": CatalogEntry("gosper2d", {}, gosper2d),
}

ALIASES = {
    "morton": "morton2",
    "hilbert2d": "hilbert2d_global",
    "hilbert": "hilbert2d_global",
    "hilbert3d": "hilbert3d_global",
    "peano": "peano2_global",
    "peano2": "peano2_global",
    "peano3": "peano3_global",
    "sierpinski2d": "sierpinski2d_local",
    "sierpinski": "sierpinski2d_local",
}

_FAMILY = re.compile(r"^(morton|peano)(\d+)(?:_(global|local))?$")


def canonical_name(name: str) -> str:
    return ALIASES.get(name, name)


@lru_cache(maxsize=64)
def _build(name: str, params: tuple) -> BSpecification:
    opts = dict(params)
    if not opts and name in CATALOG:
        return CATALOG[name].build()
    if name in ("morton", "peano"):
        d = int(opts.pop("d", 2))
        if name == "morton":
            return morton(d)
        return peano(d, opts.pop("mode", "global"))
    m = _FAMILY.match(name)
    if m and not opts:
        family, d, mode = m.group(1), int(m.group(2)), m.group(3)
        if d < 2 or d > 8:
            raise CatalogError(f"dimension {d} is outside 2..8")
        if family == "morton":
            if mode:
                raise CatalogError("morton has no global/local variants")
            return morton(d)
        return peano(d, mode or "global")
    if name in CATALOG:
        entry = CATALOG[name]
        return entry.builder(**{**entry.parameters, **opts})
    raise CatalogError(f"unknown curve {name!r}; known: {', '.join(sorted(CATALOG))}")


def builtin(name: str, params: dict | None = None, **kwargs) -> BSpecification:
    """Build a catalog curve, e.g. ``builtin("morton", d=3)`` or ``builtin("peano2_local")``."""
    merged = dict(params or {})
    merged.update(kwargs)
    key = name if name in ("morton", "peano") and merged else canonical_name(name)
    return _build(key, tuple(sorted(merged.items())))
