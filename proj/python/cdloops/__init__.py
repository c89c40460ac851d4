"""Cayley-Dickson loops, their central products and loop tables."""

from ._core import (
    BudgetExceeded,
    DecompositionError,
    Loop,
    Product,
    Table,
    ValidationError,
    associativity_degree,
    associativity_degree_closed,
    b_k,
    commutativity_degree,
    commutativity_degree_closed,
    commutativity_degree_two_factor,
    find_isomorphism,
    is_isomorphism,
    match_factors,
    pc_limits,
    rank_census,
    recover_factors,
    verify,
)

__all__ = [
    "BudgetExceeded",
    "DecompositionError",
    "Loop",
    "Product",
    "Table",
    "ValidationError",
    "associativity_degree",
    "associativity_degree_closed",
    "b_k",
    "commutativity_degree",
    "commutativity_degree_closed",
    "commutativity_degree_two_factor",
    "find_isomorphism",
    "is_isomorphism",
    "match_factors",
    "pc_limits",
    "rank_census",
    "recover_factors",
    "verify",
]
