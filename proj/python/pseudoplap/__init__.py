"""Pseudo-p-Laplacian numerical lab: grids, solver, regularity metrics and jet sweeps."""

from ._core import (
    Grid,
    __version__,
    apply,
    boundary_preset,
    claims_sweep,
    holder_seminorm,
    lipschitz_seminorm,
    min_barrier_M,
    prop4_sweep,
    prop5_sweep,
    regularity_ratio,
    rhs_preset,
    run_cli,
    solve,
    zt_sweep,
)

INTERIOR, BOUNDARY, EXTERIOR = 0, 1, 2

__all__ = [
    "Grid",
    "__version__",
    "apply",
    "boundary_preset",
    "claims_sweep",
    "holder_seminorm",
    "lipschitz_seminorm",
    "min_barrier_M",
    "prop4_sweep",
    "prop5_sweep",
    "regularity_ratio",
    "rhs_preset",
    "run_cli",
    "solve",
    "zt_sweep",
    "INTERIOR",
    "BOUNDARY",
    "EXTERIOR",
]
