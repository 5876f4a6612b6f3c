"""Neighbor queries on compiled tables, statistics and the geometric oracle."""

from .core import (
    depth_between,
    find_neighbor,
    make_node,
    neighbor,
    neighbor_depth,
    neighbor_iterative,
    neighbor_with_wrong_state,
    state_chain,
    state_of,
)
from .multilevel import MultiLevelTables, build_multilevel, dumps_multilevel, neighbor_multilevel
from .oracle import GeometricOracle, geometric_neighbor_oracle
from .traversal import DepthHistogram, depth_histogram, iter_states, traverse

__all__ = [
    "DepthHistogram",
    "GeometricOracle",
    "MultiLevelTables",
    "build_multilevel",
    "depth_between",
    "depth_histogram",
    "dumps_multilevel",
    "find_neighbor",
    "geometric_neighbor_oracle",
    "iter_states",
    "make_node",
    "neighbor",
    "neighbor_depth",
    "neighbor_iterative",
    "neighbor_multilevel",
    "neighbor_with_wrong_state",
    "state_chain",
    "state_of",
    "traverse",
]
