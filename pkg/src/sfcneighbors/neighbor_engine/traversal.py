"""Level traversal and neighbor-depth statistics."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ContractError, ResourceError
from ..table_gen.tables import NONE, CurveTables
from ..tree_core import AlgebraicNode, HistoryNode, StateHistory
from .core import depth_between, find_neighbor, neighbor_iterative

MAX_HISTOGRAM_QUERIES = 20_000_000


def traverse(tables: CurveTables, level: int, visitor) -> None:
    """Visit every node of ``level`` in curve order as ``visitor(node, {facet: neighbor})``.

    States are carried down the recursion; nodes are HistoryNodes when the
    state maps are not invertible.
    """
    if level < 0:
        raise ContractError("level must be non-negative")
    history = tables.parent_state is None
    cs, b = tables.child_state, tables.b

    def visit(node):
        results = {f: neighbor_iterative(tables, node, f) for f in range(tables.facets_of(node.state))}
        visitor(node, results)

    def walk(node):
        if node.level == level:
            visit(node)
            return
        for i in range(b):
            s = cs[node.state][i]
            position = node.position * b + i
            if history:
                walk(HistoryNode(node.level + 1, position, node.history.push(s)))
            else:
                walk(AlgebraicNode(node.level + 1, position, s))

    if history:
        walk(HistoryNode(0, 0, StateHistory(tables.root_state)))
    else:
        walk(AlgebraicNode(0, 0, tables.root_state))


def iter_states(tables: CurveTables, level: int):
    """Yield ``(position, chain)`` over a level in curve order; chain lists ancestor states."""
    cs, b = tables.child_state, tables.b
    chain = [tables.root_state] * (level + 1)
    idx = [0] * (level + 1)
    if level == 0:
        yield 0, chain
        return
    t = 1
    idx[1] = 0
    position = 0
    while t > 0:
        if idx[t] == b:
            t -= 1
            if t > 0:
                idx[t] += 1
            continue
        chain[t] = cs[chain[t - 1]][idx[t]]
        if t == level:
            yield position, chain
            position += 1
            idx[t] += 1
        else:
            t += 1
            idx[t] = 0


@dataclass(frozen=True)
class DepthHistogram:
    """``counts[k]`` = number of (node, facet) pairs with neighbor depth at least k, k = 1..level+1.

    ``counts[0]`` equals ``total``.  ``missing[f]`` counts nodes without an f-neighbor.
    """

    level: int
    counts: tuple
    total: int
    missing: tuple

    def fraction(self, k: int) -> float:
        return self.counts[k] / self.total if self.total else 0.0

    def average_depth(self) -> float:
        return sum(self.counts[1:]) / self.total if self.total else 0.0


def depth_histogram(tables: CurveTables, level: int) -> DepthHistogram:
    if level < 0:
        raise ContractError("level must be non-negative")
    queries = tables.b**level * tables.facet_count
    if queries > MAX_HISTOGRAM_QUERIES:
        raise ResourceError(f"{queries} queries exceed the histogram cap of {MAX_HISTOGRAM_QUERIES}")
    exact = [0] * (level + 2)
    missing = [0] * tables.facet_count
    total = 0
    b = tables.b
    for position, chain in iter_states(tables, level):
        for f in range(tables.facets_of(chain[-1])):
            w, _ = find_neighbor(tables, level, position, f, chain)
            if w == NONE:
                missing[f] += 1
            exact[depth_between(b, level, position, w)] += 1
            total += 1
    counts = [0] * (level + 2)
    running = 0
    for k in range(level + 1, -1, -1):
        running += exact[k]
        counts[k] = running
    return DepthHistogram(level, tuple(counts), total, tuple(missing))
