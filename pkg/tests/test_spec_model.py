import json

import pytest

from sfcneighbors.errors import CatalogError, SpecParseError, SpecValidationError
from sfcneighbors.spec_model import CATALOG, builtin, canonical_name, load_spec, save_spec, validate_spec


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_catalog_curves_validate(name):
    spec = builtin(name)
    assert validate_spec(spec).ok, str(validate_spec(spec))


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_json_round_trip(name):
    spec = builtin(name)
    again = load_spec(save_spec(spec))
    assert again == spec
    assert save_spec(again) == save_spec(spec)


def test_hilbert_state_system():
    spec = builtin("hilbert2d_global")
    assert spec.state_names == ("H", "A", "B", "R")
    assert spec.child_state == ((1, 0, 0, 2), (0, 1, 1, 3), (3, 2, 2, 0), (2, 3, 3, 1))
    assert spec.parent_state == spec.child_state
    assert spec.state_index("B") == 2 and spec.state_index(3) == 3


def test_family_names_and_aliases():
    assert canonical_name("hilbert") == "hilbert2d_global"
    assert builtin("morton", d=3).branching == 8
    assert builtin("peano2_local").state_count == 1
    assert builtin("peano2_global").state_count == 4
    assert builtin("peano3").branching == 27
    with pytest.raises(CatalogError):
        builtin("no_such_curve")


def test_floats_are_rejected():
    doc = json.loads(save_spec(builtin("morton2")))
    doc["root_points"][0][1] = 1.0
    with pytest.raises(SpecParseError):
        load_spec(json.dumps(doc))


def test_bad_column_sum_is_a_validation_error():
    doc = json.loads(save_spec(builtin("morton2")))
    doc["matrices"]["0,0"][0][0] = "2"
    with pytest.raises(SpecValidationError):
        load_spec(json.dumps(doc))


def test_missing_key():
    doc = json.loads(save_spec(builtin("morton2")))
    del doc["child_state"]
    with pytest.raises(SpecParseError):
        load_spec(json.dumps(doc))
