import pytest

from sfcneighbors import builtin
from sfcneighbors.errors import RegularityError
from sfcneighbors.table_gen import (
    NONE,
    compile_spec,
    dumps_tables,
    find_pre_representation,
    loads_tables,
    state_group,
    verify_spec,
)

from conftest import tables_for

REGULAR = [
    "morton2", "morton3", "hilbert2d_global", "peano2_global", "peano2_local",
    "peano3_local", "sierpinski2d_local", "sierpinski2d_global",
]


def test_pre_representation_nodes(hilbert):
    nodes = find_pre_representation(builtin("hilbert2d_global"))
    assert [(n.level, n.position) for n in nodes] == [(0, 0), (1, 0), (1, 3), (2, 3)]
    assert [n.state for n in nodes] == [0, 1, 2, 3]


def test_hilbert_table_entries(hilbert):
    t = hilbert
    A, B = t.state_index("A"), t.state_index("B")
    right, up = t.facet_spec.parse_facet("right"), t.facet_spec.parse_facet("up")
    assert t.N[1][A][up] == 2
    assert t.N[1][A][right] == NONE
    assert t.Omega[1][A][B][right] == 2
    # a parent facet only exists where no sibling answers
    for j in range(t.b):
        for s in range(t.state_count):
            for f in range(t.facets_of(s)):
                if t.N[j][s][f] != NONE:
                    assert t.Fp[j][s][f] == NONE


def test_facet_labels():
    t = tables_for("hilbert2d_global")
    assert t.facet_names == ["left", "right", "down", "up"]
    s = tables_for("sierpinski2d_local")
    assert s.facet_spec.index_sets[0] == (frozenset({1, 2}), frozenset({1, 3}), frozenset({2, 3}))


@pytest.mark.parametrize("name", REGULAR)
def test_regular_curves_pass_every_clause(name):
    result = verify_spec(builtin(name))
    assert result.report.ok, str(result.report)


def test_local_hilbert_fails_sibling_equivalence():
    result = verify_spec(builtin("hilbert2d_local"))
    assert result.report.clauses() == {"R1'"}
    witness = result.report.violations[0].to_dict()["witness"]
    assert witness["facet"] == "right"
    with pytest.raises(RegularityError):
        compile_spec(builtin("hilbert2d_local"))


def test_gosper_fails_containment():
    result = verify_spec(builtin("gosper2d"))
    assert result.report.verdict("R2'") == "fail"


@pytest.mark.parametrize(
    "name, expected",
    [("peano2_global", True), ("peano2_local", True), ("sierpinski2d_local", True),
     ("hilbert2d_global", False), ("morton2", False)],
)
def test_palindrome(name, expected):
    assert tables_for(name).palindrome is expected


@pytest.mark.parametrize("name", REGULAR)
def test_serialization_round_trip(name):
    t = tables_for(name)
    text = dumps_tables(t)
    again = loads_tables(text)
    assert again == t
    assert dumps_tables(again) == text


def test_palindrome_means_reversed_child_order():
    t = tables_for("peano2_local")
    for j in range(t.b):
        for f in range(t.facet_count):
            if t.Omega[j][0][0][f] != NONE:
                assert t.Omega[j][0][0][f] == t.b - 1 - j


def test_hilbert_group_is_klein():
    g = state_group(builtin("hilbert2d_global"))
    assert g.order == 4 and g.is_abelian
    assert g.element_strings() == ["id", "(HA)(BR)", "(HB)(AR)", "(HR)(AB)"]


def test_single_state_group_is_trivial():
    g = state_group(builtin("morton2"))
    assert g.order == 1 and g.element_strings() == ["id"]


def test_compile_is_cached_and_deterministic():
    spec = builtin("morton2")
    assert compile_spec(spec) is compile_spec(spec)
