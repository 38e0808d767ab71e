"""Exact short-vector enumeration and primitivity machinery.

The enumeration core is a Fincke-Pohst recursion over the fraction-free
(Bareiss) decomposition of the scaled integer Gram matrix: every pruning
bound is an integer square root of an exact rational, so no decision ever
touches floating point. Ill-conditioned inputs are LLL-preprocessed
internally and witnesses mapped back, which changes nothing observable.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import NamedTuple, Sequence

from ._lll import lll_transform
from .errors import (
    DependentVectorsError,
    DimensionMismatchError,
    NotPositiveDefiniteError,
    NotPrimitiveError,
)
from .exactlin import (
    GramMatrix,
    IntMatrix,
    IntVector,
    evaluate_form,
    int_matrix_inverse,
    int_matrix_rank,
    mat_mul,
    mat_vec,
    require_positive_definite,
    smith_normal_form,
)
from .tables import canonical_sign

F = Fraction


class ShortVectorList(NamedTuple):
    bound: Fraction
    vectors: tuple[tuple[IntVector, Fraction], ...]  # (coords, norm^2), +- reps


class SuccessiveMinima(NamedTuple):
    norms: tuple[Fraction, ...]
    witnesses: tuple[IntVector, ...]


def vector_key(coords):
    """Deterministic tie-break order: pivot index first, then coordinates.

    Pivot-first is what makes e.g. (0,1,0) beat (0,0,1) among equal-norm
    extensions; plain tuple order would prefer the latter.
    """
    piv = max((i for i, x in enumerate(coords) if x), default=-1)
    return (piv, coords)


# ---------------------------------------------------------------------------
# core enumeration

def _fp_context(a):
    """Bareiss upper rows and leading minors of an integer PD matrix.

    With u the frozen elimination rows and m the minors (m[0] = 1),
    x^T A x = sum_k (sum_{j>=k} u[k][j] x_j)^2 / (m[k+1] m[k]).
    """
    n = len(a)
    w = [list(row) for row in a]
    m = [1] * (n + 1)
    for k in range(n):
        piv = w[k][k]
        if piv <= 0:
            raise NotPositiveDefiniteError(k)
        m[k + 1] = piv
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                w[i][j] = (w[i][j] * piv - w[i][k] * w[k][j]) // m[k]
            w[i][k] = 0
    return w, m


def _quad_int_range(c_num, c_den, t_num, t_den):
    """Integer solutions of (x + c_num/c_den)^2 <= t_num/t_den, as [lo, hi].

    Exact: hi = floor(sqrt(t) - c) and lo = ceil(-sqrt(t) - c) reduce to
    floor divisions against isqrt because sqrt(M) - g < 1 for g = isqrt(M).
    """
    big = t_num * t_den * c_den * c_den
    g = isqrt(big)
    v = t_den * c_den
    u = c_num * t_den
    return -((g + u) // v), (g - u) // v


def _enumerate_core(a, bound_num, bound_den, parity=None, shrink=False):
    """All nonzero x with x^T A x <= bound (one representative per +-pair).

    parity: optional 0/1 vector constraining x_i mod 2 (coset of L/2L).
    shrink: keep only the minimal-norm layer, tightening the radius as
    shorter vectors appear (used for coset minima).
    Returns a list of (coords, q) with q = x^T A x an int.
    """
    n = len(a)
    u_rows, m = _fp_context(a)
    results: list[tuple[tuple[int, ...], int]] = []
    best = [None]
    x = [0] * n

    def eval_a(xs):
        total = 0
        for i in range(n):
            xi = xs[i]
            if xi:
                row = a[i]
                total += xi * xi * row[i]
                for j in range(i + 1, n):
                    if xs[j]:
                        total += 2 * xi * xs[j] * row[j]
        return total

    def descend(j, s_num, s_den, tail_zero):
        if shrink and best[0] is not None and best[0] * bound_den < bound_num:
            en, ed = best[0], 1
        else:
            en, ed = bound_num, bound_den
        rem_num = en * s_den - s_num * ed
        rem_den = ed * s_den
        if rem_num < 0:
            return
        u_row = u_rows[j]
        c = 0
        for i in range(j + 1, n):
            if x[i]:
                c += u_row[i] * x[i]
        mj1 = m[j + 1]
        lo, hi = _quad_int_range(c, mj1, rem_num * m[j], rem_den * mj1)
        if tail_zero and lo < 0:
            lo = 0
        if parity is not None:
            pj = parity[j]
            if (lo - pj) % 2:
                lo += 1
            step = 2
        else:
            step = 1
        for xj in range(lo, hi + 1, step):
            x[j] = xj
            tz = tail_zero and xj == 0
            if j == 0:
                if tz:
                    continue
                q = eval_a(x)
                if q * bound_den > bound_num:
                    continue
                if shrink:
                    if best[0] is None or q < best[0]:
                        best[0] = q
                        results.clear()
                        results.append((tuple(x), q))
                    elif q == best[0]:
                        results.append((tuple(x), q))
                else:
                    results.append((tuple(x), q))
            else:
                w = mj1 * xj + c
                descend(
                    j - 1,
                    s_num * mj1 * m[j] + s_den * w * w,
                    s_den * mj1 * m[j],
                    tz,
                )
        x[j] = 0

    descend(n - 1, 0, 1, True)
    return results


class _ReducedView(NamedTuple):
    a_red: IntMatrix       # U^T A U, integer
    den: int               # original G = A / den
    transform: IntMatrix   # columns = reduced basis in original coords


def _reduced_view(g: GramMatrix) -> _ReducedView:
    require_positive_definite(g)
    a, den = g.scaled()
    t, _ = lll_transform(a)
    at = mat_mul(a, t)
    a_red = mat_mul(tuple(zip(*t)), at)
    return _ReducedView(tuple(tuple(r) for r in a_red), den, t)


def _map_back(view: _ReducedView, coords):
    return canonical_sign(mat_vec(view.transform, coords))


def enumerate_short_vectors(g: GramMatrix, bound) -> ShortVectorList:
    """Complete list of nonzero v with Q(v) <= bound, up to sign.

    Exact for every positive definite G; representatives carry canonical
    sign (first nonzero coordinate positive) and are sorted by
    (norm^2, coordinates).
    """
    bound = Fraction(bound)
    if bound <= 0:
        raise ValueError("bound must be positive")
    view = _reduced_view(g)
    scaled = bound * view.den
    raw = _enumerate_core(view.a_red, scaled.numerator, scaled.denominator)
    entries = sorted(
        ((F(q, view.den), _map_back(view, coords)) for coords, q in raw)
    )
    return ShortVectorList(bound, tuple((v, q) for q, v in entries))


def lattice_minimum(g: GramMatrix):
    """(lambda^2, minima): the exact nonzero minimum of Q and every
    attaining vector up to sign."""
    view = _reduced_view(g)
    radius = min(view.a_red[i][i] for i in range(len(view.a_red)))
    raw = _enumerate_core(view.a_red, radius, 1, shrink=True)
    lam = F(raw[0][1], view.den)
    entries = sorted(
        ((F(q, view.den), _map_back(view, coords)) for coords, q in raw)
    )
    return lam, ShortVectorList(lam, tuple((v, q) for q, v in entries))


def successive_minima(g: GramMatrix) -> SuccessiveMinima:
    """Greedy system of successive minimum vectors.

    Each step takes a shortest vector linearly independent of the ones
    already chosen; ties broken by :func:`vector_key`.
    """
    n = g.n
    view = _reduced_view(g)
    radius = min(view.a_red[i][i] for i in range(n))
    while True:
        raw = _enumerate_core(view.a_red, radius, 1)
        cands = sorted(
            ((F(q, view.den), _map_back(view, coords)) for coords, q in raw),
            key=lambda t: (t[0],) + vector_key(t[1]),
        )
        chosen: list[IntVector] = []
        norms: list[Fraction] = []
        rows: list[IntVector] = []
        for q, v in cands:
            if int_matrix_rank(rows + [v]) == len(rows) + 1:
                rows.append(v)
                chosen.append(v)
                norms.append(q)
                if len(chosen) == n:
                    return SuccessiveMinima(tuple(norms), tuple(chosen))
        radius *= 2


def is_primitive_system(vectors: Sequence[Sequence[int]]) -> bool:
    """True iff the integer span of the vectors equals the intersection of
    their linear span with the ambient lattice (all Smith divisors 1)."""
    rows = [tuple(int(x) for x in v) for v in vectors]
    if not rows:
        raise DimensionMismatchError("empty vector system")
    n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise DimensionMismatchError("mixed vector lengths")
    if len(rows) > n or int_matrix_rank(rows) != len(rows):
        raise DependentVectorsError("vectors are linearly dependent")
    return all(d == 1 for d in smith_normal_form(rows).divisors)


def complete_to_basis(vectors: Sequence[Sequence[int]], n: int) -> IntMatrix:
    """Unimodular matrix whose first k columns are the given primitive system.

    Built from the Smith transforms: with U M V = [I_k; 0] for the column
    matrix M, the completion is U^-1 * blockdiag(V^-1, I).
    """
    rows = [tuple(int(x) for x in v) for v in vectors]
    k = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionMismatchError("vector length does not match dimension")
    if not is_primitive_system(rows):
        raise NotPrimitiveError("system is not primitive; no unimodular completion")
    m_cols = tuple(tuple(rows[j][i] for j in range(k)) for i in range(n))  # n x k
    snf = smith_normal_form(m_cols)
    block = [
        [snf.right_inv[i][j] if i < k and j < k else (1 if i == j else 0) for j in range(n)]
        for i in range(n)
    ]
    completion = mat_mul(snf.left_inv, block)
    for j in range(k):
        col = tuple(completion[i][j] for i in range(n))
        assert col == rows[j], "completion lost an input column"
    return tuple(tuple(r) for r in completion)


def shortest_primitive_extension(g: GramMatrix, partial: Sequence[Sequence[int]]) -> IntVector:
    """Shortest v extending the partial primitive system to a larger one.

    Radius starts at the norm of the canonical completion column (always
    feasible) and the candidate scan runs in (norm, pivot, coords) order,
    so the result is deterministic.
    """
    rows = [tuple(int(x) for x in v) for v in partial]
    k = len(rows)
    n = g.n
    if k >= n:
        raise DimensionMismatchError("partial system already spans the lattice")
    if not is_primitive_system(rows):
        raise NotPrimitiveError("partial system is not primitive")
    completion = complete_to_basis(rows, n)
    w = _babai_reduce_against(g, completion, k)
    cap = evaluate_form(g, w)  # guaranteed-feasible radius
    view = _reduced_view(g)
    radius = F(min(view.a_red[i][i] for i in range(n)), view.den)
    while True:
        radius = min(radius, cap)
        scaled = radius * view.den
        raw = _enumerate_core(view.a_red, scaled.numerator, scaled.denominator)
        cands = sorted(
            ((F(q, view.den), _map_back(view, coords)) for coords, q in raw),
            key=lambda t: (t[0],) + vector_key(t[1]),
        )
        for q, v in cands:
            try:
                if is_primitive_system(rows + [v]):
                    return v
            except DependentVectorsError:
                continue
        if radius >= cap:
            raise AssertionError("completion column vanished from its own ball")
        radius *= 2


def _babai_reduce_against(g: GramMatrix, completion, k):
    """Size-reduce column k of a completion against the first k columns
    (nearest-integer Gram-Schmidt), shrinking the feasible search radius."""
    n = g.n
    cols = [tuple(completion[i][j] for i in range(n)) for j in range(k + 1)]

    def inner(u, v):
        return sum(g.rows[i][j] * u[i] * v[j] for i in range(n) for j in range(n))

    mu = [[F(0)] * k for _ in range(k + 1)]
    bstar = [F(0)] * k
    for i in range(k):
        for j in range(i):
            mu[i][j] = (
                inner(cols[i], cols[j])
                - sum(mu[i][l] * mu[j][l] * bstar[l] for l in range(j))
            ) / bstar[j]
        bstar[i] = inner(cols[i], cols[i]) - sum(
            mu[i][j] ** 2 * bstar[j] for j in range(i)
        )
    for j in range(k):
        mu[k][j] = (
            inner(cols[k], cols[j])
            - sum(mu[k][l] * mu[j][l] * bstar[l] for l in range(j))
        ) / bstar[j]
    target = list(cols[k])
    for j in range(k - 1, -1, -1):
        q = round(mu[k][j])
        if q:
            target = [a - q * b for a, b in zip(target, cols[j])]
            for l in range(j):
                mu[k][l] -= q * mu[j][l]
    return tuple(target)


def coset_minima(g: GramMatrix, parity: Sequence[int]):
    """Shortest vectors of the coset {v : v = parity mod 2} of L/2L.

    Returns (min norm^2, +-representatives). The search radius starts at
    the norm of the 0/1 representative and shrinks as the enumeration
    finds shorter coset members.
    """
    n = g.n
    par = tuple(int(p) % 2 for p in parity)
    if len(par) != n:
        raise DimensionMismatchError("parity length mismatch")
    if not any(par):
        raise ValueError("parity class must be nonzero")
    view = _reduced_view(g)
    # transform parity into reduced coordinates: x = T y, so y = T^-1 x (mod 2)
    tinv = int_matrix_inverse(view.transform)
    par_red = tuple(int(sum(tinv[i][j] * par[j] for j in range(n))) % 2 for i in range(n))
    a = view.a_red
    rep = par_red
    bound = 0
    for i in range(n):
        if rep[i]:
            bound += a[i][i] * rep[i] * rep[i]
            for j in range(i + 1, n):
                if rep[j]:
                    bound += 2 * rep[i] * rep[j] * a[i][j]
    raw = _enumerate_core(a, bound, 1, parity=par_red, shrink=True)
    entries = sorted(
        ((F(q, view.den), _map_back(view, coords)) for coords, q in raw)
    )
    return entries[0][0], tuple(v for _, v in entries)
