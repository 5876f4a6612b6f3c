"""Neighbor finding for space-filling curves via compiled lookup tables."""

from .errors import (
    ContractError,
    OracleInconsistencyError,
    RegularityError,
    ResourceError,
    SFCError,
    TableConflictError,
    UnsupportedDimensionError,
    UnsupportedTreeError,
)
from .neighbor_engine import (
    GeometricOracle,
    build_multilevel,
    depth_histogram,
    find_neighbor,
    geometric_neighbor_oracle,
    make_node,
    neighbor,
    neighbor_depth,
    neighbor_iterative,
    neighbor_multilevel,
    neighbor_with_wrong_state,
    traverse,
)
from .optimized_curves import (
    hilbert2d_neighbor_fast,
    hilbert2d_state_fast,
    morton_neighbor,
    peano_neighbor_fast,
    sierpinski2d_neighbor_fast,
)
from .render import RenderOptions, render_svg
from .spec_model import BSpecification, builtin, load_spec, save_spec, validate_spec
from .table_gen import CurveTables, compile_spec, dumps_tables, loads_tables, state_group, verify_spec
from .tree_core import AlgebraicNode, HistoryNode, compute_state

__version__ = "0.1.0"


def __getattr__(name):
    # the estimator pulls in scikit-learn; load it only on demand
    if name == "NeighborFinder":
        from .estimator import NeighborFinder

        return NeighborFinder
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")


__all__ = [
    "AlgebraicNode",
    "BSpecification",
    "ContractError",
    "CurveTables",
    "GeometricOracle",
    "HistoryNode",
    "NeighborFinder",
    "OracleInconsistencyError",
    "RegularityError",
    "RenderOptions",
    "ResourceError",
    "SFCError",
    "TableConflictError",
    "UnsupportedDimensionError",
    "UnsupportedTreeError",
    "build_multilevel",
    "builtin",
    "compile_spec",
    "compute_state",
    "depth_histogram",
    "dumps_tables",
    "find_neighbor",
    "geometric_neighbor_oracle",
    "hilbert2d_neighbor_fast",
    "hilbert2d_state_fast",
    "load_spec",
    "loads_tables",
    "make_node",
    "morton_neighbor",
    "neighbor",
    "neighbor_depth",
    "neighbor_iterative",
    "neighbor_multilevel",
    "neighbor_with_wrong_state",
    "peano_neighbor_fast",
    "render_svg",
    "save_spec",
    "sierpinski2d_neighbor_fast",
    "state_group",
    "traverse",
    "validate_spec",
    "verify_spec",
]
