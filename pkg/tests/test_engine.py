import dataclasses

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sfcneighbors import builtin
from sfcneighbors.errors import ContractError, UnsupportedTreeError
from sfcneighbors.neighbor_engine import (
    GeometricOracle,
    build_multilevel,
    depth_histogram,
    find_neighbor,
    make_node,
    neighbor,
    neighbor_depth,
    neighbor_iterative,
    neighbor_multilevel,
    neighbor_with_wrong_state,
    traverse,
)
from sfcneighbors.tree_core import AlgebraicNode, history_node

from conftest import tables_for


def names(t, node):
    return None if node is None else (node.level, node.position, t.state_names[node.state])


def test_golden_neighbors(hilbert):
    t = hilbert
    node = make_node(t, 2, 1)
    assert t.state_names[node.state] == "A"
    f = t.facet_spec.parse_facet
    assert names(t, neighbor(t, node, f("up"))) == (2, 2, "A")
    assert names(t, neighbor(t, node, f("left"))) == (2, 0, "H")
    assert names(t, neighbor(t, node, f("right"))) == (2, 14, "B")
    assert neighbor(t, node, f("down")) is None
    assert names(t, neighbor(t, make_node(t, 3, 28), f("right"))) == (3, 35, "R")


def test_history_nodes_give_the_same_answers(hilbert):
    t = hilbert
    for j in range(64):
        h = history_node(builtin("hilbert2d_global"), 3, j)
        a = make_node(t, 3, j)
        for f in range(4):
            wh, wa = neighbor(t, h, f), neighbor(t, a, f)
            assert (wh is None) == (wa is None)
            if wa is not None:
                assert (wh.position, wh.state) == (wa.position, wa.state)
                assert wh.history.states()[-1] == wh.state


def test_multilevel_example(hilbert):
    mlt = build_multilevel(hilbert, 2)
    w = neighbor_multilevel(mlt, make_node(hilbert, 3, 28), 1)
    assert names(hilbert, w) == (3, 35, "R")


@pytest.mark.parametrize("name", ["hilbert2d_global", "morton2", "peano2_global", "sierpinski2d_global"])
@pytest.mark.parametrize("K", [1, 2, 3])
def test_multilevel_matches_single_level(name, K):
    t = tables_for(name)
    mlt = build_multilevel(t, K)
    level = 4 if t.b <= 4 else 3
    for j in range(t.b**level):
        node = make_node(t, level, j)
        for f in range(t.facets_of(node.state)):
            a, b = neighbor(t, node, f), neighbor_multilevel(mlt, node, f)
            assert a == b


def test_single_level_multilevel_tables_equal_base(hilbert):
    mlt = build_multilevel(hilbert, 1)
    assert mlt.N == hilbert.N and mlt.Omega == hilbert.Omega and mlt.Fp == hilbert.Fp


def test_find_neighbor_returns_minus_one(hilbert):
    assert find_neighbor(hilbert, 2, 1, hilbert.facet_spec.parse_facet("down")) == (-1, -1)
    assert find_neighbor(hilbert, 2, 1, 1) == (14, hilbert.state_index("B"))


def test_oracle_agrees_on_small_levels():
    for name in ("hilbert2d_global", "morton2", "sierpinski2d_local"):
        t = tables_for(name)
        spec = builtin(name)
        for level in range(3):
            oracle = GeometricOracle(spec, t.facet_spec, level)
            for j in range(t.b**level):
                for f in range(t.facets_of(oracle.states[j])):
                    assert find_neighbor(t, level, j, f)[0] == oracle.query(j, f)


def test_depth_histogram_level_two(hilbert):
    h = depth_histogram(hilbert, 2)
    assert h.counts == (64, 64, 32, 16)
    assert h.missing == (4, 4, 4, 4)
    assert h.fraction(0) == 1.0


def test_neighbor_depth(hilbert):
    assert neighbor_depth(hilbert, make_node(hilbert, 2, 1), 1) == 2
    assert neighbor_depth(hilbert, make_node(hilbert, 2, 1), 3) == 1


def test_traverse_visits_every_cell_once():
    t = tables_for("morton2")
    seen = []
    traverse(t, 1, lambda node, nbrs: seen.append((node.position, sum(w is not None for w in nbrs.values()))))
    assert seen == [(0, 2), (1, 2), (2, 2), (3, 2)]


def test_wrong_state_positions(hilbert):
    found = neighbor_with_wrong_state(hilbert, 2, 1, "H")
    assert found[hilbert.facet_spec.parse_facet("up")].position == 14
    assert {w.position for w in found.values() if w is not None} == {0, 2, 14}


def test_wrong_state_needs_invertible_maps(hilbert):
    stripped = dataclasses.replace(hilbert, parent_state=None)
    with pytest.raises(UnsupportedTreeError):
        neighbor_with_wrong_state(stripped, 2, 1, "H")


def test_bad_facet(hilbert):
    with pytest.raises(ContractError):
        find_neighbor(hilbert, 2, 1, 7)


def level_position(b, top):
    return st.integers(1, top).flatmap(lambda l: st.tuples(st.just(l), st.integers(0, b**l - 1)))


@settings(max_examples=300, deadline=None)
@given(level_position(4, 30), st.integers(0, 3))
def test_iterative_equals_recursive(lj, f):
    t = tables_for("hilbert2d_global")
    node = make_node(t, *lj)
    assert neighbor_iterative(t, node, f) == neighbor(t, node, f)


@settings(max_examples=200, deadline=None)
@given(level_position(4, 30), st.integers(0, 3))
def test_neighbor_relation_is_symmetric(lj, f):
    t = tables_for("hilbert2d_global")
    node = make_node(t, *lj)
    w = neighbor(t, node, f)
    if w is not None:
        back = [neighbor(t, w, g) for g in range(4)]
        assert node in back


@settings(max_examples=200, deadline=None)
@given(level_position(9, 12), st.integers(0, 3))
def test_peano_iterative_and_multilevel(lj, f):
    t = tables_for("peano2_global")
    node = make_node(t, *lj)
    ref = neighbor(t, node, f)
    assert neighbor_iterative(t, node, f) == ref
    assert neighbor_multilevel(build_multilevel(t, 2), node, f) == ref


def test_peano_depth_bound():
    t = tables_for("peano2_global")
    for level in range(1, 5):
        h = depth_histogram(t, level)
        for k in range(1, level + 2):
            assert h.counts[k] * 3 ** (k - 1) <= h.total


def test_histogram_matches_oracle_depths():
    from sfcneighbors.neighbor_engine import depth_between

    name, level = "peano2_global", 2
    t = tables_for(name)
    oracle = GeometricOracle(builtin(name), t.facet_spec, level)
    counts = [0] * (level + 2)
    for j in range(t.b**level):
        for f in range(t.facets_of(oracle.states[j])):
            depth = depth_between(t.b, level, j, oracle.query(j, f))
            for k in range(depth + 1):
                counts[k] += 1
    assert tuple(counts) == depth_histogram(t, level).counts
