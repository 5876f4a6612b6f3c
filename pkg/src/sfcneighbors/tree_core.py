"""Node handles for the different b-index-trees and conversions between them.

Every tree kind exposes ``root()``, ``child(node, i)``, ``parent(node)``,
``index(node)`` and ``level(node)``.  Nodes are immutable tuples.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

from .errors import ContractError, UnsupportedTreeError
from .geometry import PointMatrix


class LevelPosition(NamedTuple):
    level: int
    position: int


class AlgebraicNode(NamedTuple):
    level: int
    position: int
    state: int


class StateHistory:
    """Persistent singly linked chain of states.

    ``state`` is the newest entry (the node's own state) and ``parent`` the
    shared chain of its ancestors, ending with the root state.
    """

    __slots__ = ("state", "parent", "length")

    def __init__(self, state: int, parent: Optional["StateHistory"] = None):
        self.state = state
        self.parent = parent
        self.length = 1 if parent is None else parent.length + 1

    def push(self, state: int) -> "StateHistory":
        return StateHistory(state, self)

    def states(self) -> list:
        """States from the root down to this node."""
        out = []
        node = self
        while node is not None:
            out.append(node.state)
            node = node.parent
        return out[::-1]

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, StateHistory) or self.length != other.length:
            return False
        a, b = self, other
        while a is not None:
            if a is b:
                return True
            if a.state != b.state:
                return False
            a, b = a.parent, b.parent
        return True

    def __hash__(self):
        return hash(tuple(self.states()))

    def __repr__(self):
        return f"StateHistory({self.states()})"


class HistoryNode(NamedTuple):
    level: int
    position: int
    history: StateHistory

    @property
    def state(self) -> int:
        return self.history.state


class CoordNode(NamedTuple):
    level: int
    coords: tuple
    state: int


class GeometricNode(NamedTuple):
    level: int
    position: int
    state: int
    points: PointMatrix


def _check_index(i: int, b: int):
    if not 0 <= i < b:
        raise ContractError(f"child index {i} outside 0..{b - 1}")


def _check_position(level: int, position: int, b: int):
    if level < 0:
        raise ContractError("level must be non-negative")
    if not 0 <= position < b**level:
        raise ContractError(f"position {position} outside 0..{b}^{level}-1")


def _no_parent(node):
    if node.level == 0:
        raise ContractError("the root has no parent")


class LevelPositionTree:
    def __init__(self, branching: int):
        self.b = branching

    def root(self) -> LevelPosition:
        return LevelPosition(0, 0)

    def child(self, node, i):
        _check_index(i, self.b)
        return LevelPosition(node.level + 1, node.position * self.b + i)

    def parent(self, node):
        _no_parent(node)
        return LevelPosition(node.level - 1, node.position // self.b)

    def index(self, node):
        return node.position % self.b

    def level(self, node):
        return node.level


class AlgebraicTree:
    """Level, position and state; parents need the inverse maps S^p."""

    def __init__(self, spec):
        self.spec = spec
        self.b = spec.branching
        self.child_state = spec.child_state
        self.parent_state = spec.parent_state

    def root(self) -> AlgebraicNode:
        return AlgebraicNode(0, 0, self.spec.root_state)

    def child(self, node, i):
        _check_index(i, self.b)
        return AlgebraicNode(node.level + 1, node.position * self.b + i, self.child_state[node.state][i])

    def parent(self, node):
        _no_parent(node)
        if self.parent_state is None:
            raise UnsupportedTreeError(
                "some child-state map is not invertible; use HistoryTree / HistoryNode"
            )
        q, i = divmod(node.position, self.b)
        return AlgebraicNode(node.level - 1, q, self.parent_state[node.state][i])

    def index(self, node):
        return node.position % self.b

    def level(self, node):
        return node.level


class HistoryTree:
    """Algebraic tree whose nodes carry their full state history."""

    def __init__(self, spec):
        self.spec = spec
        self.b = spec.branching
        self.child_state = spec.child_state

    def root(self) -> HistoryNode:
        return HistoryNode(0, 0, StateHistory(self.spec.root_state))

    def child(self, node, i):
        _check_index(i, self.b)
        h = node.history
        return HistoryNode(node.level + 1, node.position * self.b + i, h.push(self.child_state[h.state][i]))

    def parent(self, node):
        _no_parent(node)
        return HistoryNode(node.level - 1, node.position // self.b, node.history.parent)

    def index(self, node):
        return node.position % self.b

    def level(self, node):
        return node.level


def _kd_of(spec_or_kd):
    kd = getattr(spec_or_kd, "kd", spec_or_kd)
    if kd is None or not hasattr(kd, "child_order"):
        raise UnsupportedTreeError("curve has no k^d structure (no integer coordinates)")
    return kd


class CoordinateTree:
    """Cells addressed by integer coordinates in a k^level grid."""

    def __init__(self, spec_or_kd):
        kd = _kd_of(spec_or_kd)
        self.kd = kd
        self.k, self.d, self.b = kd.k, kd.d, kd.branching
        self.child_state = kd.child_state
        self.order = kd.child_order
        self.inverse_order = [{tuple(c): j for j, c in enumerate(o)} for o in kd.child_order]

    def root(self) -> CoordNode:
        return CoordNode(0, (0,) * self.d, 0)

    def child(self, node, i):
        _check_index(i, self.b)
        offset = self.order[node.state][i]
        coords = tuple(self.k * u + o for u, o in zip(node.coords, offset))
        return CoordNode(node.level + 1, coords, self.child_state[node.state][i])

    def _parent_state_and_index(self, node):
        digit = tuple(u % self.k for u in node.coords)
        hits = []
        for s in range(len(self.order)):
            j = self.inverse_order[s][digit]
            if self.child_state[s][j] == node.state:
                hits.append((s, j))
        if len(hits) != 1:
            raise UnsupportedTreeError(
                "parent state is not determined by coordinates and state; "
                "use the level-position tree instead"
            )
        return hits[0]

    def parent(self, node):
        _no_parent(node)
        s, _ = self._parent_state_and_index(node)
        return CoordNode(node.level - 1, tuple(u // self.k for u in node.coords), s)

    def index(self, node):
        return self._parent_state_and_index(node)[1]

    def level(self, node):
        return node.level


class GeometricTree:
    """Nodes carry their exact point matrix."""

    def __init__(self, spec):
        self.spec = spec
        self.b = spec.branching

    def root(self) -> GeometricNode:
        return GeometricNode(0, 0, self.spec.root_state, self.spec.root_points)

    def child(self, node, i):
        _check_index(i, self.b)
        m = self.spec.matrix(node.state, i)
        return GeometricNode(
            node.level + 1,
            node.position * self.b + i,
            self.spec.child_state[node.state][i],
            node.points @ m,
        )

    def parent(self, node):
        _no_parent(node)
        return geometric_node(self.spec, node.level - 1, node.position // self.b)

    def index(self, node):
        return node.position % self.b

    def level(self, node):
        return node.level


def tree_child(tree, node, i):
    return tree.child(node, i)


def tree_parent(tree, node):
    return tree.parent(node)


def tree_index(tree, node):
    return tree.index(node)


def tree_level(tree, node):
    return tree.level(node)


def isomorphism_map(src, dst, node):
    """Map a node of tree ``src`` to the corresponding node of tree ``dst``.

    Loop form: collect the child indices on the way up in ``src``, then
    replay them downwards from the root of ``dst``.
    """
    path = []
    while src.level(node) > 0:
        path.append(src.index(node))
        node = src.parent(node)
    out = dst.root()
    for i in reversed(path):
        out = dst.child(out, i)
    return out


def digits(position: int, level: int, b: int) -> list:
    """Base-b digits of a position, most significant first, padded to ``level``."""
    out = [0] * level
    for t in range(level - 1, -1, -1):
        position, out[t] = divmod(position, b)
    return out


def compute_state(spec, level: int, position: int) -> int:
    """State of node (level, position): fold S^c over the digits."""
    b = spec.branching
    _check_position(level, position, b)
    s = spec.root_state
    table = spec.child_state
    for digit in digits(position, level, b):
        s = table[s][digit]
    return s


def algebraic_node(spec, level: int, position: int) -> AlgebraicNode:
    return AlgebraicNode(level, position, compute_state(spec, level, position))


def history_node(spec, level: int, position: int) -> HistoryNode:
    b = spec.branching
    _check_position(level, position, b)
    h = StateHistory(spec.root_state)
    for digit in digits(position, level, b):
        h = h.push(spec.child_state[h.state][digit])
    return HistoryNode(level, position, h)


def geometric_node(spec, level: int, position: int) -> GeometricNode:
    b = spec.branching
    _check_position(level, position, b)
    s, Q = spec.root_state, spec.root_points
    for digit in digits(position, level, b):
        Q = Q @ spec.matrix(s, digit)
        s = spec.child_state[s][digit]
    return GeometricNode(level, position, s, Q)


def node_point_matrix(spec, level: int, position: int) -> PointMatrix:
    return geometric_node(spec, level, position).points


def position_to_coords(spec_or_kd, level: int, position: int) -> tuple:
    kd = _kd_of(spec_or_kd)
    _check_position(level, position, kd.branching)
    u = [0] * kd.d
    s = 0
    for digit in digits(position, level, kd.branching):
        offset = kd.child_order[s][digit]
        u = [kd.k * a + o for a, o in zip(u, offset)]
        s = kd.child_state[s][digit]
    return tuple(u)


def coords_to_position(spec_or_kd, level: int, coords) -> int:
    kd = _kd_of(spec_or_kd)
    coords = tuple(int(c) for c in coords)
    if len(coords) != kd.d or any(not 0 <= c < kd.k**level for c in coords):
        raise ContractError(f"coordinates {coords} outside the {kd.k}^{level} grid")
    inverse = [{tuple(c): j for j, c in enumerate(o)} for o in kd.child_order]
    j, s = 0, 0
    for t in range(level - 1, -1, -1):
        cell = tuple((c // kd.k**t) % kd.k for c in coords)
        digit = inverse[s][cell]
        j = j * kd.branching + digit
        s = kd.child_state[s][digit]
    return j
