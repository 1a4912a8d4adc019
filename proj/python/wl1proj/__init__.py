"""Exact weighted l1 projection onto the hyperplane sum(x) = 1.

Thin wrapper over the C++ core. Vectors come back as numpy arrays.
"""

from ._core import (
    ContractViolation,
    InvalidInput,
    bisection_solve,
    compare_solvers,
    kkt_residual,
    lcc_objective,
    locality_weights,
    naive_enumeration_solve,
    phi,
    prox_step,
    random_problem,
    solve_lcc,
    solve_projection,
)

__all__ = [
    "ContractViolation",
    "InvalidInput",
    "bisection_solve",
    "compare_solvers",
    "kkt_residual",
    "lcc_objective",
    "locality_weights",
    "naive_enumeration_solve",
    "phi",
    "prox_step",
    "random_problem",
    "solve_lcc",
    "solve_projection",
]
