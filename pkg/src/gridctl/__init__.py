"""Controllability and observability of grid-graph Laplacians from selected nodes."""

from .grid import GridSpec, build_grid_laplacian, build_path_laplacian, flip_operator
from .spectral import grid_spectrum, is_simple, min_control_set_size
from .paths import path_node_uncontrollable, path_nodeset_uncontrollable, path_uncontrollable_eigenpairs
from .simple_grid import build_partition, simple_grid_controllable, suggest_control_nodes
from .symmetry import brick_inheritance_scan, nonsimple_grid_controllable, simultaneous_zero_test
from .analysis import analyze, oracle_check, suggest_nodes

__all__ = [
    "GridSpec",
    "analyze",
    "brick_inheritance_scan",
    "build_grid_laplacian",
    "build_partition",
    "build_path_laplacian",
    "flip_operator",
    "grid_spectrum",
    "is_simple",
    "min_control_set_size",
    "nonsimple_grid_controllable",
    "oracle_check",
    "path_node_uncontrollable",
    "path_nodeset_uncontrollable",
    "path_uncontrollable_eigenpairs",
    "simple_grid_controllable",
    "simultaneous_zero_test",
    "suggest_control_nodes",
    "suggest_nodes",
]
