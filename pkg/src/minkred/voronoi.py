"""Relevant vectors of the Dirichlet-Voronoi cell.

Voronoi's criterion: v is relevant iff +-v are the unique minima of their
coset of L/2L. Each of the 2^n - 1 nonzero cosets is enumerated exactly;
tie cosets contribute nothing.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import NamedTuple

from .enumeration import coset_minima, lattice_minimum
from .errors import NotReducedError, UnsupportedDimensionError
from .exactlin import GramMatrix, IntVector, require_positive_definite
from .reduction import is_minkowski_reduced_table
from .tables import MAX_TABLE_DIM, relevant_abs_patterns

F = Fraction

MAX_COSET_DIM = 8


class RelevantVectorSet(NamedTuple):
    vectors: tuple[IntVector, ...]          # one representative per +-pair
    norms: tuple[Fraction, ...]

    def pair_count(self) -> int:
        return len(self.vectors)

    def signed_count(self) -> int:
        return 2 * len(self.vectors)


class Table4Report(NamedTuple):
    dimension: int
    checked: int
    matched: int
    mismatches: tuple[tuple[IntVector, Fraction], ...]
    max_abs_coordinate: int

    @property
    def all_match(self) -> bool:
        return not self.mismatches


def relevant_vectors(g: GramMatrix) -> RelevantVectorSet:
    """All facet normals of the Dirichlet-Voronoi cell, up to sign.

    Exact: a coset whose minimum is attained by more than one +-pair is a
    tie and yields no relevant vector.
    """
    require_positive_definite(g)
    n = g.n
    if n > MAX_COSET_DIM:
        raise UnsupportedDimensionError(
            f"coset enumeration supported up to dimension {MAX_COSET_DIM}, got {n}"
        )
    found = []
    for parity in product((0, 1), repeat=n):
        if not any(parity):
            continue
        norm, reps = coset_minima(g, parity)
        if len(reps) == 1:
            found.append((norm, reps[0]))
    found.sort(key=lambda t: (t[0], t[1]))
    return RelevantVectorSet(
        tuple(v for _, v in found), tuple(q for q, _ in found)
    )


def certify_minima_relevant(g: GramMatrix) -> bool:
    """Check that every minimum vector is a relevant vector."""
    _, minima = lattice_minimum(g)
    rel = set(relevant_vectors(g).vectors)
    return all(v in rel for v, _ in minima.vectors)


def check_table4_membership(g: GramMatrix) -> Table4Report:
    """Verify every relevant vector's |coordinate| multiset appears among
    the expanded relevant-vector candidates (Minkowski-reduced basis,
    dimensions 2..6). Mismatches are reported, never suppressed."""
    n = g.n
    if n > MAX_TABLE_DIM:
        raise UnsupportedDimensionError(
            f"candidate table covers dimensions up to {MAX_TABLE_DIM}, got {n}"
        )
    verdict = is_minkowski_reduced_table(g)
    if verdict is not True:
        raise NotReducedError(
            f"membership claim only holds for reduced bases; violation {verdict}"
        )
    patterns = relevant_abs_patterns(n)
    rel = relevant_vectors(g)
    mismatches = []
    matched = 0
    max_abs = 0
    for v, q in zip(rel.vectors, rel.norms):
        key = tuple(sorted(abs(x) for x in v))
        max_abs = max(max_abs, key[-1])
        if key in patterns:
            matched += 1
        else:
            mismatches.append((v, q))
    return Table4Report(n, len(rel.vectors), matched, tuple(mismatches), max_abs)
