from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sfcneighbors import builtin
from sfcneighbors.errors import ContractError
from sfcneighbors.tree_core import (
    AlgebraicTree,
    CoordinateTree,
    GeometricTree,
    HistoryTree,
    LevelPositionTree,
    compute_state,
    coords_to_position,
    digits,
    history_node,
    isomorphism_map,
    node_point_matrix,
    position_to_coords,
)

HILBERT = builtin("hilbert2d_global")
MORTON = builtin("morton2")


def placement(spec, level, j):
    """Grid cell from the lower corner of the exact point matrix."""
    Q = node_point_matrix(spec, level, j)
    return tuple(int(min(p[i] for p in Q.cols) * 2**level) for i in range(spec.dim))


def interleave(x, y, level):
    return sum(((x >> i) & 1) << (2 * i) | ((y >> i) & 1) << (2 * i + 1) for i in range(level))


def test_hilbert_coordinates_match_placement():
    assert position_to_coords(HILBERT, 2, 1) == (1, 0)
    assert position_to_coords(HILBERT, 2, 14) == (2, 0)
    for level in range(4):
        for j in range(4**level):
            assert position_to_coords(HILBERT, level, j) == placement(HILBERT, level, j)


def test_morton_is_bit_interleaving_with_x_low():
    assert coords_to_position(MORTON, 2, (1, 1)) == 3
    for level in range(4):
        for j in range(4**level):
            x, y = position_to_coords(MORTON, level, j)
            assert interleave(x, y, level) == j


def test_morton_child_cell_corners():
    Q = node_point_matrix(MORTON, 1, 3)
    assert {p for p in Q.cols} == {(Fraction(a, 2), Fraction(c, 2)) for a in (1, 2) for c in (1, 2)}


def test_state_of_example_node():
    assert HILBERT.state_name(compute_state(HILBERT, 3, 28)) == "R"
    assert HILBERT.state_name(compute_state(HILBERT, 2, 1)) == "A"
    assert digits(28, 3, 4) == [1, 3, 0]


@pytest.mark.parametrize("tree_cls", [AlgebraicTree, HistoryTree, GeometricTree, CoordinateTree])
def test_isomorphism_with_level_position_tree(tree_cls):
    src, dst = LevelPositionTree(4), tree_cls(HILBERT)
    node = src.root()
    for i in (1, 3, 0, 2):
        node = src.child(node, i)
    image = isomorphism_map(src, dst, node)
    assert dst.level(image) == 4 and dst.index(image) == 2
    back = isomorphism_map(dst, src, image)
    assert back == node
    assert isomorphism_map(dst, src, dst.parent(image)) == src.parent(node)


def test_history_node_keeps_ancestor_states():
    node = history_node(HILBERT, 3, 28)
    names = [HILBERT.state_name(s) for s in node.history.states()]
    assert names == ["H", "H", "B", "R"]
    assert node.state == HILBERT.state_index("R")


def test_out_of_range_position():
    with pytest.raises(ContractError):
        position_to_coords(HILBERT, 2, 16)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 12).flatmap(lambda l: st.tuples(st.just(l), st.integers(0, 4**l - 1))))
def test_hilbert_coordinate_round_trip(lj):
    level, j = lj
    assert coords_to_position(HILBERT, level, position_to_coords(HILBERT, level, j)) == j


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 15).flatmap(lambda l: st.tuples(st.just(l), st.integers(0, 4**l - 1))))
def test_morton_round_trip_against_interleaving(lj):
    level, j = lj
    x, y = position_to_coords(MORTON, level, j)
    assert interleave(x, y, level) == j
    assert coords_to_position(MORTON, level, (x, y)) == j
