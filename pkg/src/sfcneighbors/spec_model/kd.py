"""The k^d layer: subcube orders and cube symmetries turned into b-specifications.

Corner columns of a cube are numbered in binary with the first coordinate
in the lowest bit, so the unit square has columns (0,0), (1,0), (0,1), (1,1).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import Optional

from ..errors import ContractError
from ..geometry import PointMatrix
from .model import BSpecification, BStateSystem


@dataclass(frozen=True, order=True)
class SignedPermutation:
    """Symmetry of the unit cube: ``y_i = x_{perm[i]}``, reflected when ``flip[i]``."""

    perm: tuple
    flip: tuple

    @classmethod
    def identity(cls, d: int) -> "SignedPermutation":
        return cls(tuple(range(d)), (False,) * d)

    @classmethod
    def all(cls, d: int) -> list:
        return sorted(
            cls(p, f) for p in permutations(range(d)) for f in product((False, True), repeat=d)
        )

    @property
    def dim(self) -> int:
        return len(self.perm)

    def apply_unit(self, x) -> tuple:
        """Image of a point of the unit cube."""
        return tuple(1 - x[p] if f else x[p] for p, f in zip(self.perm, self.flip))

    def apply_cell(self, cell, k: int) -> tuple:
        """Image of the subcube with integer offset ``cell`` in a k-grid."""
        return tuple(k - 1 - cell[p] if f else cell[p] for p, f in zip(self.perm, self.flip))

    def compose(self, inner: "SignedPermutation") -> "SignedPermutation":
        """``self ∘ inner``."""
        perm = tuple(inner.perm[p] for p in self.perm)
        flip = tuple(f != inner.flip[p] for p, f in zip(self.perm, self.flip))
        return SignedPermutation(perm, flip)

    def __str__(self):
        axes = "xyzwuvts"[: self.dim] if self.dim <= 8 else None
        parts = []
        for p, f in zip(self.perm, self.flip):
            name = axes[p] if axes else f"x{p}"
            parts.append(f"1-{name}" if f else name)
        return "(" + ",".join(parts) + ")"


@dataclass(frozen=True)
class KDSpecification:
    """Subcube orders ``child_order[s][j]`` (integer offsets in a k-grid).

    ``orientation[s][j]`` is the coordinate frame of child j relative to its
    parent; only the local mode uses it to permute matrix columns.
    """

    k: int
    d: int
    child_order: tuple
    child_state: tuple
    mode: str = "global"
    orientation: Optional[tuple] = None
    state_names: Optional[tuple] = None

    @property
    def branching(self) -> int:
        return self.k**self.d

    @property
    def state_count(self) -> int:
        return len(self.child_order)

    def check(self):
        b = self.branching
        if self.mode not in ("global", "local"):
            raise ContractError(f"unknown mode {self.mode!r}")
        if self.k < 2 or self.d < 2:
            raise ContractError("need k >= 2 and d >= 2")
        grid = set(product(range(self.k), repeat=self.d))
        for s, order in enumerate(self.child_order):
            if len(order) != b or set(map(tuple, order)) != grid:
                raise ContractError(f"child order of state {s} is not a bijection onto the grid")
        if len(self.child_state) != self.state_count:
            raise ContractError("child_state needs one row per state")
        if self.mode == "local" and self.orientation is None:
            raise ContractError("local mode needs child orientations")


def corner_bits(c: int, d: int) -> tuple:
    return tuple((c >> i) & 1 for i in range(d))


def unit_cube(d: int) -> PointMatrix:
    return PointMatrix(tuple(corner_bits(c, d) for c in range(2**d)))


def _corner_weights(point, d: int) -> list:
    """Multilinear weights of a point of [0,1]^d over the 2^d corners."""
    weights = []
    for c in range(2**d):
        w = Fraction(1)
        for i, bit in enumerate(corner_bits(c, d)):
            w *= point[i] if bit else 1 - point[i]
        weights.append(w)
    return weights


def subcube_matrix(cell, k: int, d: int, frame: Optional[SignedPermutation] = None) -> tuple:
    """Transition matrix expressing the corners of a subcube through the parent's corners.

    With ``frame`` the child's column c is the corner ``frame(bits(c))``.
    """
    cols = []
    for c in range(2**d):
        bits = corner_bits(c, d)
        if frame is not None:
            bits = frame.apply_unit(bits)
        point = tuple(Fraction(cell[i] + bits[i], k) for i in range(d))
        cols.append(_corner_weights(point, d))
    return tuple(zip(*cols))


def kd_to_b_spec(kd: KDSpecification, name: str = "") -> BSpecification:
    kd.check()
    n, b, d = kd.state_count, kd.branching, kd.d
    matrices = []
    for s in range(n):
        row = []
        for j in range(b):
            frame = kd.orientation[s][j] if kd.mode == "local" else None
            row.append(subcube_matrix(kd.child_order[s][j], kd.k, d, frame))
        matrices.append(tuple(row))
    system = BStateSystem(n, kd.child_state, b)
    return BSpecification(
        system=system,
        dim=d,
        vertex_counts=(2**d,) * n,
        root_points=unit_cube(d),
        matrices=tuple(matrices),
        state_names=kd.state_names,
        name=name,
        kd=kd,
    )


def orientation_closure(base_order, frames, k: int, d: int, names=None) -> KDSpecification:
    """Global k^d model generated by one base pattern.

    Child j of the base pattern sits at ``base_order[j]`` with frame
    ``frames[j]``.  States are the cube symmetries reachable from the
    identity; a state T lays its children out at ``T(base_order[j])`` and
    child j gets state ``T ∘ frames[j]``.  States are numbered in
    breadth-first discovery order.  ``names`` maps a symmetry to a label.
    """
    start = SignedPermutation.identity(d)
    states = [start]
    index = {start: 0}
    queue = deque([start])
    orders, table = {}, {}
    while queue:
        T = queue.popleft()
        orders[T] = tuple(T.apply_cell(c, k) for c in base_order)
        row = []
        for frame in frames:
            child = T.compose(frame)
            if child not in index:
                index[child] = len(states)
                states.append(child)
                queue.append(child)
            row.append(index[child])
        table[T] = tuple(row)
    state_names = tuple(names(T) for T in states) if names else None
    return KDSpecification(
        k=k,
        d=d,
        child_order=tuple(orders[T] for T in states),
        child_state=tuple(table[T] for T in states),
        mode="global",
        state_names=state_names,
    )


def single_state_local(base_order, frames, k: int, d: int, name: str = "G") -> KDSpecification:
    """Local model: one state, children carry their own coordinate frames."""
    return KDSpecification(
        k=k,
        d=d,
        child_order=(tuple(tuple(c) for c in base_order),),
        child_state=((0,) * len(base_order),),
        mode="local",
        orientation=(tuple(frames),),
        state_names=(name,),
    )
