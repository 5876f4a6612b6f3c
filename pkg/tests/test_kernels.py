import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sfcneighbors import builtin, compute_state
from sfcneighbors.errors import ContractError
from sfcneighbors.neighbor_engine import find_neighbor, make_node
from sfcneighbors.optimized_curves import (
    HilbertKernel,
    PeanoKernel,
    hilbert2d_neighbor_fast,
    hilbert2d_state_fast,
    morton_neighbor,
    peano_neighbor_fast,
    sierpinski2d_neighbor_fast,
)

from conftest import tables_for


def test_morton_examples():
    assert morton_neighbor(2, 2, 3, 1) == 6
    assert morton_neighbor(2, 2, 3, 0) == 2
    # x = 3 column has no right neighbor
    assert all(morton_neighbor(2, 2, j, 1) == -1 for j in (5, 7, 13, 15))


def test_peano_and_sierpinski_examples():
    assert peano_neighbor_fast(2, 2, 2, 1) == 15
    assert peano_neighbor_fast(2, 2, 0, 0) == -1
    assert sierpinski2d_neighbor_fast(2, 1, 1) == 2


@pytest.mark.parametrize("d, top", [(2, 5), (3, 3)])
def test_morton_matches_engine(d, top):
    t = tables_for(f"morton{d}")
    for level in range(top + 1):
        for j in range(t.b**level):
            for f in range(2 * d):
                assert morton_neighbor(d, level, j, f) == find_neighbor(t, level, j, f)[0]


def test_hilbert_matches_engine():
    t = tables_for("hilbert2d_global")
    for level in range(6):
        for j in range(4**level):
            node = make_node(t, level, j)
            assert hilbert2d_state_fast(level, j) == node.state
            for f in range(4):
                expected = find_neighbor(t, level, j, f)
                got = hilbert2d_neighbor_fast(level, j, node.state, f)
                assert (got or (-1, -1)) == expected


@pytest.mark.parametrize("d, top", [(2, 4), (3, 2)])
def test_peano_matches_engine(d, top):
    t = tables_for(f"peano{d}_local")
    for level in range(top + 1):
        for j in range(t.b**level):
            for f in range(2 * d):
                assert peano_neighbor_fast(d, level, j, f) == find_neighbor(t, level, j, f)[0]


def test_sierpinski_matches_engine():
    t = tables_for("sierpinski2d_local")
    for level in range(9):
        for j in range(2**level):
            for f in range(3):
                assert sierpinski2d_neighbor_fast(level, j, f) == find_neighbor(t, level, j, f)[0]


def test_kernel_preconditions():
    with pytest.raises(ContractError):
        PeanoKernel(tables_for("hilbert2d_global"))
    with pytest.raises(ContractError):
        HilbertKernel(tables_for("morton2"))
    with pytest.raises(ContractError):
        morton_neighbor(2, 32, 0, 0)
    with pytest.raises(ContractError):
        sierpinski2d_neighbor_fast(2, 4, 0)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 31).flatmap(lambda l: st.tuples(st.just(l), st.integers(0, 4**l - 1))))
def test_fast_state_equals_digit_walk(lj):
    level, j = lj
    assert hilbert2d_state_fast(level, j) == compute_state(builtin("hilbert2d_global"), level, j)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 31), st.integers(0, 2**62 - 1), st.sampled_from([(0, 1), (1, 0), (2, 3), (3, 2)]))
def test_morton_steps_are_inverse(level, raw, pair):
    j = raw % (4**level) if level else 0
    f, back = pair
    w = morton_neighbor(2, level, j, f)
    if w != -1:
        assert morton_neighbor(2, level, w, back) == j
