"""Exact-arithmetic toolkit for Minkowski reduction of positive definite
quadratic forms in low dimensions: finite reduction tables, short-vector
enumeration, Dirichlet-Voronoi relevant vectors, admissible centerings and
the coordinate-bound verifier, all over rational arithmetic."""

from .exactlin import (
    EmbeddedBasis,
    GramMatrix,
    apply_transform,
    determinant,
    evaluate_form,
    gram_from_basis,
    is_positive_definite,
    ldl_decompose,
    smith_normal_form,
)

__all__ = [
    "EmbeddedBasis",
    "GramMatrix",
    "apply_transform",
    "determinant",
    "evaluate_form",
    "gram_from_basis",
    "is_positive_definite",
    "ldl_decompose",
    "smith_normal_form",
]
