from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sfcneighbors.errors import DegenerateHullError
from sfcneighbors.geometry import (
    PointMatrix,
    affine_dimension,
    contains,
    extreme_indices,
    hull_facets,
    intersection_dimension,
    intersection_equals_face,
    is_transition_matrix,
    matrix_pair_equivalence,
)

SQUARE = [(0, 0), (1, 0), (0, 1), (1, 1)]


def square(x, y, size=1):
    return [(x, y), (x + size, y), (x, y + size), (x + size, y + size)]


def test_square_facets_are_its_sides():
    assert hull_facets(SQUARE) == [frozenset({1, 2}), frozenset({1, 3}), frozenset({2, 4}), frozenset({3, 4})]


def test_collinear_point_joins_every_facet_it_lies_on():
    pts = [(0, 0), (2, 0), (0, 2), (2, 2), (1, 0)]
    assert frozenset({1, 2, 5}) in hull_facets(pts)


def test_flat_set_has_no_hull():
    with pytest.raises(DegenerateHullError):
        hull_facets([(0, 0), (1, 1), (2, 2)])


def test_affine_dimension_cases():
    assert affine_dimension([]) == -1
    assert affine_dimension([(1, 2)]) == 0
    assert affine_dimension([(0, 0), (1, 1), (3, 3)]) == 1
    assert affine_dimension(SQUARE) == 2


def test_contains_and_extreme_points():
    assert contains(SQUARE, [(Fraction(1, 2), Fraction(1, 3))])
    assert not contains(SQUARE, [(2, 0)])
    assert extreme_indices([(0, 0), (2, 0), (1, 0)]) == [0, 1]


@pytest.mark.parametrize(
    "other, expected",
    [(square(1, 0), 1), (square(1, 1), 0), (square(3, 3), -1), (square(0, 0), 2)],
)
def test_intersection_dimension_of_unit_squares(other, expected):
    assert intersection_dimension(SQUARE, other) == expected


def test_shared_side_is_a_face_of_both():
    left = PointMatrix.from_rows([[0, 1, 0, 1], [0, 0, 1, 1]])
    right = PointMatrix.from_rows([[1, 2, 1, 2], [0, 0, 1, 1]])
    assert intersection_equals_face(left, {2, 4}, right, {1, 3})
    # half-overlapping squares share part of a side only
    shifted = PointMatrix.from_rows([[1, 2, 1, 2], [Fraction(1, 2), Fraction(1, 2), Fraction(3, 2), Fraction(3, 2)]])
    assert not intersection_equals_face(left, {2, 4}, shifted, {1, 3})


def test_pair_equivalence_finds_the_translation():
    Q = PointMatrix.from_rows([[0, 1, 0, 1], [0, 0, 1, 1]])
    R = PointMatrix.from_rows([[3, 4, 3, 4], [5, 5, 6, 6]])
    tau = matrix_pair_equivalence(Q, None, R, None)
    assert tau is not None and tau((0, 0)) == (3, 5)
    skew = PointMatrix.from_rows([[0, 1, 0, 3], [0, 0, 1, 1]])
    assert matrix_pair_equivalence(Q, None, skew, None) is None


def test_transition_matrix_columns_sum_to_one():
    assert is_transition_matrix([[1, Fraction(1, 2)], [0, Fraction(1, 2)]])
    assert not is_transition_matrix([[1, 1], [1, 0]])


coords = st.integers(-6, 6)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(coords, coords), min_size=1, max_size=6), coords, coords)
def test_affine_dimension_ignores_translation(points, dx, dy):
    moved = [(x + dx, y + dy) for x, y in points]
    assert affine_dimension(points) == affine_dimension(moved)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(coords, coords, coords), min_size=4, max_size=4))
def test_tetrahedron_has_four_triangular_facets(points):
    if affine_dimension(points) < 3:
        return
    facets = hull_facets(points)
    assert len(facets) == 4 and all(len(f) == 3 for f in facets)


@settings(max_examples=40, deadline=None)
@given(coords, coords)
def test_intersection_is_symmetric(dx, dy):
    other = square(dx, dy, 2)
    assert intersection_dimension(SQUARE, other) == intersection_dimension(other, SQUARE)
