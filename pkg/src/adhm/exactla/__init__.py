"""Exact linear algebra over the rationals and finite fields."""
from .fields import (GF, QQ, Field, FiniteField, Rationals, Scalar, embed_values, field_from_json,
                     is_irreducible, is_prime, parse_field, scalar_ops, smallest_irreducible)
from .matrix import Mat, rank_kernel, solve_affine
from .subspace import (DEFAULT_MAX_SUBSPACES, Subspace, all_subspaces, count_subspaces,
                       enumerate_subspaces, gaussian_binomial, subspace_algebra, subspaces_between)

__all__ = [
    "GF", "QQ", "Field", "FiniteField", "Rationals", "Scalar", "embed_values", "field_from_json",
    "is_irreducible", "is_prime", "parse_field", "scalar_ops", "smallest_irreducible",
    "Mat", "rank_kernel", "solve_affine",
    "DEFAULT_MAX_SUBSPACES", "Subspace", "all_subspaces", "count_subspaces", "enumerate_subspaces",
    "gaussian_binomial", "subspace_algebra", "subspaces_between",
]
