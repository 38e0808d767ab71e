"""All-integer LLL on a Gram matrix (de Weger / Cohen's integral variant).

Maintains the leading-minor sequence d and the integer Gram-Schmidt
numerators lambda, so the whole run is exact integer arithmetic; the reduced
Gram matrix is recomputed from the accumulated transform at the end.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NotPositiveDefiniteError

def lll_transform(a, delta=Fraction(3, 4)):
    """Reduce the integer Gram matrix ``a``.

    Returns (u, swaps) where u is the unimodular transform whose columns
    are the reduced basis in input coordinates (reduced Gram = u^T a u).
    Raises NotPositiveDefiniteError when a leading minor is <= 0.
    """
    n = len(a)
    delta = Fraction(delta)
    p, q = delta.numerator, delta.denominator

    dd = [0] * (n + 1)
    dd[0] = 1
    lam = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1):
            u = a[i][j]
            for k in range(j):
                u = (dd[k + 1] * u - lam[i][k] * lam[j][k]) // dd[k]
            if j < i:
                lam[i][j] = u
            else:
                if u <= 0:
                    raise NotPositiveDefiniteError(i)
                dd[i + 1] = u

    # transform columns are basis vectors; column ops mirror basis ops
    t = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def reduce_pair(k, l):
        lkl = lam[k][l]
        dl = dd[l + 1]
        if 2 * abs(lkl) > dl:
            r = (2 * lkl + dl) // (2 * dl)
            for s in range(n):
                t[s][k] -= r * t[s][l]
            lam[k][l] = lkl - r * dl
            for j in range(l):
                lam[k][j] -= r * lam[l][j]

    swaps = 0
    k = 1
    while k < n:
        reduce_pair(k, k - 1)
        lkl = lam[k][k - 1]
        if q * (dd[k + 1] * dd[k - 1] + lkl * lkl) < p * dd[k] * dd[k]:
            # swap basis vectors k-1 and k
            for s in range(n):
                t[s][k], t[s][k - 1] = t[s][k - 1], t[s][k]
            for j in range(k - 1):
                lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
            b = (dd[k - 1] * dd[k + 1] + lkl * lkl) // dd[k]
            for i in range(k + 1, n):
                ti = lam[i][k]
                lam[i][k] = (lam[i][k - 1] * dd[k + 1] - lkl * ti) // dd[k]
                lam[i][k - 1] = (b * ti + lkl * lam[i][k]) // dd[k + 1]
            dd[k] = b
            swaps += 1
            k = max(k - 1, 1)
        else:
            for l in range(k - 2, -1, -1):
                reduce_pair(k, l)
            k += 1

    return tuple(tuple(row) for row in t), swaps
