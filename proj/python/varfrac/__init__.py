"""Bernoulli-polynomial collocation for variable-order fractional differential equations."""

from ._core import (
    DomainError,
    Error,
    EvalError,
    Expr,
    IoError,
    ParseError,
    SchemaError,
    Solution,
    SolverError,
    basis_vector,
    bernoulli_numbers,
    bernoulli_poly,
    binomial,
    caputo,
    check_problem,
    example_json,
    examples,
    gamma,
    gammainc_upper,
    gram_matrix,
    operational_matrix,
    parse_expression,
    project,
    q_inverse,
    q_matrix,
    run_table,
    solve,
    theorem1_bound,
    theorem2_bound,
)

__all__ = [name for name in dir() if not name.startswith("_")]
