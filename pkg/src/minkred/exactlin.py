"""Exact rational linear algebra: quadratic forms, LDL, determinants,
Smith normal form and unimodular basis changes.

No floating point anywhere; every comparison in this package that decides
anything goes through Fraction or int arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import (
    DependentVectorsError,
    DimensionMismatchError,
    LDLDecompositionError,
    NotPositiveDefiniteError,
    NotSymmetricError,
    NotUnimodularError,
)

IntVector = tuple[int, ...]
IntMatrix = tuple[IntVector, ...]
FracMatrix = tuple[tuple[Fraction, ...], ...]


def _as_frac_rows(rows) -> FracMatrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


class GramMatrix:
    """Symmetric rational matrix of a quadratic form Q(x) = x^T G x.

    Symmetry is validated at construction; positive definiteness is a
    property of most operations' preconditions and is checked on demand
    (see :func:`first_nonpositive_pivot`). Instances are immutable and
    hashable.
    """

    __slots__ = ("n", "rows", "_scaled", "_first_bad_pivot")

    def __init__(self, rows):
        frac_rows = _as_frac_rows(rows)
        n = len(frac_rows)
        if n == 0 or any(len(r) != n for r in frac_rows):
            raise DimensionMismatchError("Gram matrix must be square and non-empty")
        for i in range(n):
            for j in range(i):
                if frac_rows[i][j] != frac_rows[j][i]:
                    raise NotSymmetricError(
                        f"entry ({i},{j}) != entry ({j},{i}): "
                        f"{frac_rows[i][j]} vs {frac_rows[j][i]}"
                    )
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", frac_rows)
        object.__setattr__(self, "_scaled", None)
        object.__setattr__(self, "_first_bad_pivot", -2)  # -2 = not computed

    def __setattr__(self, name, value):
        raise AttributeError("GramMatrix is immutable")

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def diagonal(self) -> tuple[Fraction, ...]:
        return tuple(self.rows[i][i] for i in range(self.n))

    def scaled(self) -> tuple[IntMatrix, int]:
        """Return (A, d) with A integer, d > 0 and G = A / d."""
        cached = object.__getattribute__(self, "_scaled")
        if cached is None:
            d = 1
            for row in self.rows:
                for x in row:
                    d = lcm(d, x.denominator)
            A = tuple(tuple(int(x * d) for x in row) for row in self.rows)
            cached = (A, d)
            object.__setattr__(self, "_scaled", cached)
        return cached

    def __eq__(self, other):
        return isinstance(other, GramMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.rows)
        return f"GramMatrix([{body}])"


class EmbeddedBasis:
    """Rational d x n column matrix of n independent basis vectors in R^d."""

    __slots__ = ("ambient_dim", "rank", "matrix")

    def __init__(self, matrix):
        rows = _as_frac_rows(matrix)
        d = len(rows)
        if d == 0:
            raise DimensionMismatchError("empty embedded basis")
        n = len(rows[0])
        if any(len(r) != n for r in rows) or n == 0 or n > d:
            raise DimensionMismatchError(
                f"need d x n matrix with 1 <= n <= d, got {d} rows, widths vary or n > d"
            )
        object.__setattr__(self, "ambient_dim", d)
        object.__setattr__(self, "rank", n)
        object.__setattr__(self, "matrix", rows)

    def __setattr__(self, name, value):
        raise AttributeError("EmbeddedBasis is immutable")

    def column(self, j) -> tuple[Fraction, ...]:
        return tuple(self.matrix[i][j] for i in range(self.ambient_dim))

    def __eq__(self, other):
        return isinstance(other, EmbeddedBasis) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"EmbeddedBasis(<{self.ambient_dim}x{self.rank}>)"


# ---------------------------------------------------------------------------
# integer matrix helpers

def identity_matrix(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_transpose(m) -> tuple[tuple, ...]:
    return tuple(zip(*m))


def mat_mul(a, b) -> tuple[tuple, ...]:
    bt = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_vec(m, v) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def int_determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix by fraction-free (Bareiss)
    elimination."""
    n = len(m)
    if any(len(r) != n for r in m):
        raise DimensionMismatchError("determinant needs a square matrix")
    a = [list(map(int, row)) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def determinant(m) -> Fraction:
    """Exact determinant of a square rational matrix.

    Rows are scaled to integers first, then eliminated fraction-free so
    intermediate values stay bounded.
    """
    rows = _as_frac_rows(m)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionMismatchError("determinant needs a square matrix")
    scale = Fraction(1)
    int_rows = []
    for row in rows:
        d = 1
        for x in row:
            d = lcm(d, x.denominator)
        scale *= d
        int_rows.append([int(x * d) for x in row])
    return Fraction(int_determinant(int_rows)) / scale


def int_matrix_rank(m: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix via fraction-free elimination."""
    a = [list(map(int, row)) for row in m]
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    rank = 0
    prev = 1
    for c in range(cols):
        pivot_row = None
        for r in range(rank, rows):
            if a[r][c] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        a[rank], a[pivot_row] = a[pivot_row], a[rank]
        for r in range(rank + 1, rows):
            for cc in range(c + 1, cols):
                a[r][cc] = (a[r][cc] * a[rank][c] - a[r][c] * a[rank][cc]) // prev
            a[r][c] = 0
        prev = a[rank][c]
        rank += 1
        if rank == rows:
            break
    return rank


def is_unimodular(t) -> bool:
    try:
        rows = [[int(x) for x in row] for row in t]
    except (TypeError, ValueError):
        return False
    n = len(rows)
    if any(len(r) != n for r in rows):
        return False
    if any(Fraction(x) != int(x) for row in _as_frac_rows(t) for x in row):
        return False
    return int_determinant(rows) in (1, -1)


def int_matrix_inverse(t: Sequence[Sequence[int]]) -> IntMatrix:
    """Inverse of a unimodular integer matrix (again integer)."""
    n = len(t)
    det = int_determinant(t)
    if det not in (1, -1):
        raise NotUnimodularError(f"determinant is {det}, expected +-1")
    # adjugate / det; n <= ~12 so cofactor expansion via minors is fine
    inv = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = [
                [t[r][c] for c in range(n) if c != i] for r in range(n) if r != j
            ]
            cof = int_determinant(minor) if minor else 1
            row.append((-1) ** (i + j) * cof // det)
        inv.append(tuple(row))
    return tuple(inv)


# ---------------------------------------------------------------------------
# quadratic form operations

def evaluate_form(g: GramMatrix, x: Sequence[int]) -> Fraction:
    """Evaluate Q(x) = x^T G x exactly."""
    if len(x) != g.n:
        raise DimensionMismatchError(f"vector length {len(x)} != form dimension {g.n}")
    rows = g.rows
    total = Fraction(0)
    for i, xi in enumerate(x):
        if xi == 0:
            continue
        row = rows[i]
        total += xi * xi * row[i]
        for j in range(i + 1, g.n):
            if x[j]:
                total += 2 * xi * x[j] * row[j]
    return total


def ldl_decompose(g: GramMatrix) -> tuple[FracMatrix, tuple[Fraction, ...]]:
    """Exact LDL^T of a symmetric rational matrix.

    Returns (L, D) with L unit lower triangular and L diag(D) L^T == G.
    All pivots are returned even when some are <= 0; if a zero pivot has
    a nonzero entry below it the (pivotless) decomposition does not exist
    and LDLDecompositionError is raised.
    """
    n = g.n
    rows = g.rows
    L = [[Fraction(0)] * n for _ in range(n)]
    D = [Fraction(0)] * n
    for j in range(n):
        d = rows[j][j] - sum(L[j][k] * L[j][k] * D[k] for k in range(j))
        D[j] = d
        L[j][j] = Fraction(1)
        for i in range(j + 1, n):
            num = rows[i][j] - sum(L[i][k] * L[j][k] * D[k] for k in range(j))
            if d == 0:
                if num != 0:
                    raise LDLDecompositionError(
                        f"zero pivot at index {j} with nonzero entry below"
                    )
                L[i][j] = Fraction(0)
            else:
                L[i][j] = num / d
    return tuple(tuple(r) for r in L), tuple(D)


def first_nonpositive_pivot(g: GramMatrix) -> Optional[int]:
    """Index of the first LDL pivot <= 0, or None if G is positive definite.

    Stops at the offending pivot, so it never divides by a bad one.
    """
    cached = object.__getattribute__(g, "_first_bad_pivot")
    if cached != -2:
        return cached
    n = g.n
    rows = g.rows
    L = [[Fraction(0)] * n for _ in range(n)]
    D = [Fraction(0)] * n
    result = None
    for j in range(n):
        d = rows[j][j] - sum(L[j][k] * L[j][k] * D[k] for k in range(j))
        if d <= 0:
            result = j
            break
        D[j] = d
        for i in range(j + 1, n):
            L[i][j] = (rows[i][j] - sum(L[i][k] * L[j][k] * D[k] for k in range(j))) / d
    object.__setattr__(g, "_first_bad_pivot", result)
    return result


def is_positive_definite(g: GramMatrix) -> bool:
    return first_nonpositive_pivot(g) is None


def require_positive_definite(g: GramMatrix) -> None:
    bad = first_nonpositive_pivot(g)
    if bad is not None:
        raise NotPositiveDefiniteError(bad)


def gram_from_basis(b: EmbeddedBasis) -> GramMatrix:
    """Exact B^T B of an embedded basis; errors on dependent columns."""
    d, n = b.ambient_dim, b.rank
    cols = [b.column(j) for j in range(n)]
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            row.append(sum(cols[i][k] * cols[j][k] for k in range(d)))
        rows.append(row)
    g = GramMatrix(rows)
    if determinant(g.rows) == 0:
        raise DependentVectorsError("basis columns are linearly dependent")
    return g


def apply_transform(g: GramMatrix, t) -> GramMatrix:
    """Return T^T G T for a unimodular integer T (columns = new basis)."""
    rows = [[int(x) for x in row] for row in t]
    if len(rows) != g.n or any(len(r) != g.n for r in rows):
        raise DimensionMismatchError("transform shape does not match form")
    det = int_determinant(rows)
    if det not in (1, -1):
        raise NotUnimodularError(f"determinant is {det}, expected +-1")
    gt = mat_mul(g.rows, rows)
    tt = mat_transpose(rows)
    return GramMatrix(mat_mul(tt, gt))


def transform_gram_int(a: Sequence[Sequence[int]], t: Sequence[Sequence[int]]):
    """T^T A T over plain ints (hot-path variant of apply_transform)."""
    at = mat_mul(a, t)
    return mat_mul(mat_transpose(t), at)


# ---------------------------------------------------------------------------
# Smith normal form

class SNFResult(NamedTuple):
    divisors: tuple[int, ...]
    left: IntMatrix        # U with U * M * V diagonal
    right: IntMatrix       # V
    left_inv: IntMatrix
    right_inv: IntMatrix


def smith_normal_form(m: Sequence[Sequence[int]]) -> SNFResult:
    """Smith normal form of an integer matrix with explicit transforms.

    Returns divisors d_1 | d_2 | ... (nonnegative, including zeros for a
    rank deficit) together with unimodular U, V such that U M V is the
    diagonal matrix of divisors, plus their inverses. Elementary row and
    column operations only, so the inverses are accumulated exactly.
    """
    a = [[int(x) for x in row] for row in m]
    k = len(a)
    if k == 0:
        raise DimensionMismatchError("empty matrix")
    n = len(a[0])
    if n == 0 or any(len(r) != n for r in a):
        raise DimensionMismatchError("ragged or empty matrix")

    u = [list(r) for r in identity_matrix(k)]
    ui = [list(r) for r in identity_matrix(k)]
    v = [list(r) for r in identity_matrix(n)]
    vi = [list(r) for r in identity_matrix(n)]

    def row_add(i, j, c):  # row i += c * row j
        for s in range(n):
            a[i][s] += c * a[j][s]
        for s in range(k):
            u[i][s] += c * u[j][s]
        for s in range(k):
            ui[s][j] -= c * ui[s][i]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]
        for s in range(k):
            ui[s][i], ui[s][j] = ui[s][j], ui[s][i]

    def row_neg(i):
        for s in range(n):
            a[i][s] = -a[i][s]
        for s in range(k):
            u[i][s] = -u[i][s]
        for s in range(k):
            ui[s][i] = -ui[s][i]

    def col_add(j, l, c):  # col j += c * col l
        for s in range(k):
            a[s][j] += c * a[s][l]
        for s in range(n):
            v[s][j] += c * v[s][l]
        for s in range(n):
            vi[l][s] -= c * vi[j][s]

    def col_swap(j, l):
        for s in range(k):
            a[s][j], a[s][l] = a[s][l], a[s][j]
        for s in range(n):
            v[s][j], v[s][l] = v[s][l], v[s][j]
        vi[j], vi[l] = vi[l], vi[j]

    rank_limit = min(k, n)
    t = 0
    while t < rank_limit:
        # pick smallest-magnitude nonzero pivot in the trailing block
        best = None
        for i in range(t, k):
            for j in range(t, n):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        if bi != t:
            row_swap(t, bi)
        if bj != t:
            col_swap(t, bj)

        while True:
            dirty = False
            for i in range(t + 1, k):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    row_add(i, t, -q)
                    if a[i][t] != 0:  # remainder becomes the new, smaller pivot
                        row_swap(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    col_add(j, t, -q)
                    if a[t][j] != 0:
                        col_swap(t, j)
                        dirty = True
            if not dirty and all(a[i][t] == 0 for i in range(t + 1, k)) and all(
                a[t][j] == 0 for j in range(t + 1, n)
            ):
                break

        # enforce the divisibility chain before moving on
        pivot = a[t][t]
        fixed = True
        for i in range(t + 1, k):
            for j in range(t + 1, n):
                if a[i][j] % pivot != 0:
                    row_add(t, i, 1)
                    fixed = False
                    break
            if not fixed:
                break
        if fixed:
            t += 1

    for i in range(rank_limit):
        if a[i][i] < 0:
            row_neg(i)

    divisors = tuple(a[i][i] for i in range(rank_limit))
    return SNFResult(
        divisors,
        tuple(tuple(r) for r in u),
        tuple(tuple(r) for r in v),
        tuple(tuple(r) for r in ui),
        tuple(tuple(r) for r in vi),
    )


def vector_gcd(xs: Iterable[int]) -> int:
    g = 0
    for x in xs:
        g = gcd(g, x)
    return g
