"""Eigenfunction Galerkin solver for sixth-order boundary value problems."""

from ._core import (
    Basis,
    CoefficientSet,
    InvalidArgument,
    NumericalError,
    SteadySolution,
    beta,
    chi,
    eigenvalue,
    eigenvalue_asymptotic,
    evolve,
    gamma,
    gram_matrix,
    model_exact_solution,
    model_spec,
    project,
    solve,
    solve_model,
    synthesize,
    verify,
    zeros,
)

__version__ = "0.1.0"

__all__ = [
    "Basis",
    "CoefficientSet",
    "InvalidArgument",
    "NumericalError",
    "SteadySolution",
    "beta",
    "chi",
    "eigenvalue",
    "eigenvalue_asymptotic",
    "evolve",
    "gamma",
    "gram_matrix",
    "model_exact_solution",
    "model_spec",
    "project",
    "solve",
    "solve_model",
    "synthesize",
    "verify",
    "zeros",
]
