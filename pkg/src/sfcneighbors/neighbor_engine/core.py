"""Neighbor finding on compiled tables: recursive, iterative and position forms."""

from __future__ import annotations

import threading

from ..errors import ContractError, UnsupportedTreeError
from ..table_gen.tables import NONE, CurveTables
from ..tree_core import AlgebraicNode, HistoryNode, StateHistory, digits


def _check_facet(tables: CurveTables, state: int, f: int):
    if not isinstance(f, int) or not 0 <= f < tables.facets_of(state):
        raise ContractError(f"facet {f!r} outside 0..{tables.facets_of(state) - 1}")


def _check_node(tables: CurveTables, node):
    if node.level < 0 or not 0 <= node.position < tables.b**node.level:
        raise ContractError(f"position {node.position} outside level {node.level}")
    if not 0 <= node.state < tables.state_count:
        raise ContractError(f"state {node.state} outside 0..{tables.state_count - 1}")


def _parent_of(tables: CurveTables, node):
    """Parent node of the same kind as ``node``."""
    q, i = divmod(node.position, tables.b)
    if isinstance(node, HistoryNode):
        return HistoryNode(node.level - 1, q, node.history.parent)
    if tables.parent_state is None:
        raise UnsupportedTreeError(
            "child-state maps are not invertible; query with a HistoryNode"
        )
    return AlgebraicNode(node.level - 1, q, tables.parent_state[node.state][i])


def _child_of(tables: CurveTables, node, i: int):
    s = tables.child_state[node.state][i]
    position = node.position * tables.b + i
    if isinstance(node, HistoryNode):
        return HistoryNode(node.level + 1, position, node.history.push(s))
    return AlgebraicNode(node.level + 1, position, s)


def neighbor(tables: CurveTables, node, f: int):
    """The f-neighbor of ``node`` or None: climb until a sibling answers, then descend.

    ``node`` is an AlgebraicNode (needs invertible state maps) or a
    HistoryNode; the result has the same type and level.
    """
    _check_node(tables, node)
    _check_facet(tables, node.state, f)
    return _neighbor(tables, node, f)


def _neighbor(tables, node, f):
    if node.level == 0:
        return None
    parent = _parent_of(tables, node)
    jv = node.position % tables.b
    sp = parent.state
    jw = tables.N[jv][sp][f]
    if jw != NONE:
        return _child_of(tables, parent, jw)
    fp = tables.Fp[jv][sp][f]
    if fp == NONE:
        return None
    pw = _neighbor(tables, parent, fp)
    if pw is None:
        return None
    jw = tables.Omega[jv][sp][pw.state][f]
    if jw == NONE:
        return None
    return _child_of(tables, pw, jw)


_POOL = threading.local()


def _scratch(capacity: int) -> list:
    buf = getattr(_POOL, "buf", None)
    if buf is None or len(buf) < capacity:
        buf = [None] * max(capacity, 64)
        _POOL.buf = buf
    return buf


def neighbor_iterative(tables: CurveTables, node, f: int, scratch: list = None):
    """Loop form of :func:`neighbor`: ascend recording (index, parent, facet), then descend.

    ``scratch`` may be a caller-owned list with at least ``node.level``
    slots; otherwise a per-thread buffer is reused.
    """
    _check_node(tables, node)
    _check_facet(tables, node.state, f)
    level = node.level
    if level == 0:
        return None
    buf = scratch if scratch is not None else _scratch(level)
    if len(buf) < level:
        raise ContractError(f"scratch buffer needs {level} slots, has {len(buf)}")
    N, Fp, Omega, b = tables.N, tables.Fp, tables.Omega, tables.b

    # first iteration unrolled: most queries end here
    parent = _parent_of(tables, node)
    jv = node.position % b
    sp = parent.state
    jw = N[jv][sp][f]
    if jw != NONE:
        return _child_of(tables, parent, jw)
    fp = Fp[jv][sp][f]
    if fp == NONE:
        return None
    buf[0] = (jv, sp, f)
    depth = 1
    cur, f = parent, fp
    while True:
        if cur.level == 0:
            return None
        parent = _parent_of(tables, cur)
        jv = cur.position % b
        sp = parent.state
        jw = N[jv][sp][f]
        if jw != NONE:
            found = _child_of(tables, parent, jw)
            break
        fp = Fp[jv][sp][f]
        if fp == NONE:
            return None
        buf[depth] = (jv, sp, f)
        depth += 1
        cur, f = parent, fp

    while depth:
        depth -= 1
        jv, sp, f = buf[depth]
        jw = Omega[jv][sp][found.state][f]
        if jw == NONE:
            return None
        found = _child_of(tables, found, jw)
    return found


def state_chain(tables: CurveTables, level: int, position: int, root_state: int = None) -> list:
    """States of the ancestors of (level, position), root first, the node last."""
    if level < 0 or not 0 <= position < tables.b**level:
        raise ContractError(f"position {position} outside level {level}")
    s = tables.root_state if root_state is None else root_state
    chain = [s]
    cs = tables.child_state
    for digit in digits(position, level, tables.b):
        s = cs[s][digit]
        chain.append(s)
    return chain


def state_of(tables: CurveTables, level: int, position: int) -> int:
    return state_chain(tables, level, position)[-1]


def make_node(tables: CurveTables, level: int, position: int, history: bool = None):
    """AlgebraicNode, or HistoryNode when ``history`` or the maps are not invertible."""
    chain = state_chain(tables, level, position)
    if history or (history is None and tables.parent_state is None):
        h = StateHistory(chain[0])
        for s in chain[1:]:
            h = h.push(s)
        return HistoryNode(level, position, h)
    return AlgebraicNode(level, position, chain[-1])


def find_neighbor(tables: CurveTables, level: int, position: int, f: int, chain: list = None) -> tuple:
    """Position-level query: ``(position, state)`` of the f-neighbor or ``(-1, -1)``.

    Works for every spec since the ancestor states are folded top-down.
    """
    if chain is None:
        chain = state_chain(tables, level, position)
    _check_facet(tables, chain[-1], f)
    b, N, Fp, Omega, cs = tables.b, tables.N, tables.Fp, tables.Omega, tables.child_state
    t = level
    j = position
    records = []
    while True:
        if t == 0:
            return NONE, NONE
        jv = j % b
        sp = chain[t - 1]
        jw = N[jv][sp][f]
        if jw != NONE:
            j = j - jv + jw
            s = cs[sp][jw]
            break
        fp = Fp[jv][sp][f]
        if fp == NONE:
            return NONE, NONE
        records.append((jv, sp, f))
        j //= b
        f = fp
        t -= 1
    for jv, sp, f in reversed(records):
        jw = Omega[jv][sp][s][f]
        if jw == NONE:
            return NONE, NONE
        j = j * b + jw
        s = cs[s][jw]
    return j, s


def neighbor_depth(tables: CurveTables, node, f: int) -> int:
    """Number of levels between ``node`` and the lowest common ancestor with its f-neighbor.

    ``level + 1`` when there is no f-neighbor.
    """
    _check_node(tables, node)
    _check_facet(tables, node.state, f)
    chain = state_chain(tables, node.level, node.position)
    if chain[-1] != node.state:
        chain = None  # caller supplied a different state: trust the node
    if chain is None:
        w = neighbor_iterative(tables, node, f)
        target = -1 if w is None else w.position
    else:
        target, _ = find_neighbor(tables, node.level, node.position, f, chain)
    return depth_between(tables.b, node.level, node.position, target)


def depth_between(b: int, level: int, j: int, w: int) -> int:
    if w < 0:
        return level + 1
    k = 0
    while j != w:
        j //= b
        w //= b
        k += 1
    return k


def neighbor_with_wrong_state(tables: CurveTables, level: int, position: int, assumed_state) -> dict:
    """Run the query for every facet with the node's state replaced by ``assumed_state``."""
    if tables.parent_state is None:
        raise UnsupportedTreeError("wrong-state queries need invertible child-state maps")
    s = tables.state_index(assumed_state)
    node = AlgebraicNode(level, position, s)
    return {f: neighbor(tables, node, f) for f in range(tables.facets_of(s))}
