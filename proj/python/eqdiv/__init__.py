"""Equitable contiguous division of [0,1] with piecewise densities."""

from ._core import (
    ChainResult,
    CutVector,
    Density,
    DensityKind,
    EquitableSolution,
    Error,
    FairnessReport,
    GridSearchResult,
    Instance,
    InstanceFile,
    Permutation,
    SolveStatus,
    SpherePoint,
    SweepEntry,
    chain_cuts,
    cuts_to_sphere,
    descent_refine,
    fairness_report,
    grid_search_equitable,
    parse_instance,
    parse_instance_text,
    plateau_refine,
    residual_map,
    residual_norm,
    solve_equitable,
    sphere_to_cuts,
    sweep_permutations,
    valuation_matrix,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
