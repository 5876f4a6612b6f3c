"""Compile curve specifications into verified neighbor lookup tables."""

from .cells import Cell, FacetSpecification, label_facets, neighbor_facets
from .group import StateGroupInfo, state_group
from .representation import (
    RegularityReport,
    Representation,
    Violation,
    check_pre_regularity,
    check_regularity,
    enumerate_facets,
    find_pre_representation,
    find_representation,
)
from .serialize import dumps_tables, loads_tables
from .tables import NONE, CompiledCurve, CurveTables, check_palindrome, compile_spec, compute_tables, verify_spec

__all__ = [
    "NONE",
    "Cell",
    "CompiledCurve",
    "CurveTables",
    "FacetSpecification",
    "RegularityReport",
    "Representation",
    "StateGroupInfo",
    "Violation",
    "check_palindrome",
    "check_pre_regularity",
    "check_regularity",
    "compile_spec",
    "compute_tables",
    "dumps_tables",
    "enumerate_facets",
    "find_pre_representation",
    "find_representation",
    "label_facets",
    "loads_tables",
    "neighbor_facets",
    "state_group",
    "verify_spec",
]
