"""Curve specifications, the k^d layer, builtin catalog and file format."""

from .catalog import CATALOG, CatalogEntry, builtin, canonical_name, refine_by_orientation
from .fileio import load_spec, save_spec
from .kd import KDSpecification, SignedPermutation, kd_to_b_spec
from .model import BSpecification, BStateSystem, SpecViolation, ValidationReport, validate_spec

__all__ = [
    "BSpecification",
    "BStateSystem",
    "CATALOG",
    "CatalogEntry",
    "KDSpecification",
    "SignedPermutation",
    "SpecViolation",
    "ValidationReport",
    "builtin",
    "canonical_name",
    "kd_to_b_spec",
    "load_spec",
    "refine_by_orientation",
    "save_spec",
    "validate_spec",
]
