import random
from fractions import Fraction

import pytest

from minkred.corpus import E8_STAR_COORDS, E9_STAR_COORDS, example9_gram, named_lattice
from minkred.enumeration import (
    complete_to_basis,
    coset_minima,
    enumerate_short_vectors,
    is_primitive_system,
    lattice_minimum,
    shortest_primitive_extension,
    successive_minima,
)
from minkred.errors import (
    DependentVectorsError,
    DimensionMismatchError,
    NotPositiveDefiniteError,
    NotPrimitiveError,
)
from minkred.exactlin import (
    GramMatrix,
    apply_transform,
    evaluate_form,
    identity_matrix,
    int_determinant,
    mat_mul,
)

from _oracles import brute_coset_minima, brute_minimum, brute_short_vectors, xgcd

F = Fraction


def random_pd_gram(rng, n, spread=3):
    a = [[rng.randint(-spread, spread) for _ in range(n)] for _ in range(n)]
    return GramMatrix(
        [
            [sum(a[k][i] * a[k][j] for k in range(n)) + (2 if i == j else 0) for j in range(n)]
            for i in range(n)
        ]
    )


def random_unimodular(rng, n, ops=None):
    t = [list(r) for r in identity_matrix(n)]
    for _ in range(ops if ops is not None else 3 * n):
        i, j = rng.sample(range(n), 2)
        c = rng.randint(-3, 3)
        for s in range(n):
            t[i][s] += c * t[j][s]
    return tuple(tuple(r) for r in t)


class TestEnumerate:
    def test_identity_bound_1(self):
        out = enumerate_short_vectors(GramMatrix(identity_matrix(2)), 1)
        assert [(v, q) for v, q in out.vectors] == [((0, 1), 1), ((1, 0), 1)]

    def test_a2_bound_2(self):
        out = enumerate_short_vectors(named_lattice("A2"), 2)
        assert {v for v, _ in out.vectors} == {(1, 0), (0, 1), (1, -1)}
        assert all(q == 2 for _, q in out.vectors)

    def test_example9_bound_1_membership(self):
        g = example9_gram()
        out = enumerate_short_vectors(g, 1)
        vecs = {v for v, _ in out.vectors}
        for i in range(9):
            unit = tuple(1 if j == i else 0 for j in range(9))
            assert unit in vecs
        canonical_star = tuple(-x for x in E8_STAR_COORDS)  # first nonzero positive
        assert canonical_star in vecs
        assert all(q == 1 for _, q in out.vectors)

    def test_rejects_bad_bound_and_non_pd(self):
        with pytest.raises(ValueError):
            enumerate_short_vectors(GramMatrix(identity_matrix(2)), 0)
        with pytest.raises(NotPositiveDefiniteError):
            enumerate_short_vectors(GramMatrix([[1, 2], [2, 1]]), 1)

    @pytest.mark.parametrize("seed", range(12))
    def test_matches_box_brute_force(self, seed):
        rng = random.Random(seed)
        n = rng.randint(2, 4)
        g = random_pd_gram(rng, n)
        bound = F(rng.randint(2, 8))
        expected = brute_short_vectors(g.rows, bound)
        got = [(v, q) for v, q in enumerate_short_vectors(g, bound).vectors]
        assert got == expected

    @pytest.mark.parametrize("seed", range(6))
    def test_skewed_inputs_still_complete(self, seed):
        rng = random.Random(seed + 100)
        n = rng.randint(2, 3)
        base = random_pd_gram(rng, n)
        g = apply_transform(base, random_unimodular(rng, n))
        bound = min(base[i, i] for i in range(n))
        expected = brute_short_vectors(g.rows, bound)
        got = [(v, q) for v, q in enumerate_short_vectors(g, bound).vectors]
        assert got == expected


class TestLatticeMinimum:
    def test_example9(self):
        lam, minima = lattice_minimum(example9_gram())
        assert lam == 1
        assert all(q == 1 for _, q in minima.vectors)

    def test_z6(self):
        lam, minima = lattice_minimum(named_lattice("Z6"))
        assert lam == 1 and len(minima.vectors) == 6

    def test_3_1_1_4(self):
        lam, minima = lattice_minimum(GramMatrix([[3, 1], [1, 4]]))
        assert lam == 3
        assert [v for v, _ in minima.vectors] == [(1, 0)]

    @pytest.mark.parametrize("seed", range(10))
    def test_matches_brute_force_and_unimodular_invariance(self, seed):
        rng = random.Random(seed + 40)
        n = rng.randint(2, 4)
        g = random_pd_gram(rng, n)
        lam, minima = lattice_minimum(g)
        blam, bvecs = brute_minimum(g.rows)
        assert lam == blam
        assert [v for v, _ in minima.vectors] == bvecs
        t = random_unimodular(rng, n)
        lam2, _ = lattice_minimum(apply_transform(g, t))
        assert lam2 == lam


class TestSuccessiveMinima:
    def test_identity(self):
        sm = successive_minima(GramMatrix(identity_matrix(4)))
        assert sm.norms == (1, 1, 1, 1)
        assert sorted(sm.witnesses) == [
            (0, 0, 0, 1), (0, 0, 1, 0), (0, 1, 0, 0), (1, 0, 0, 0)
        ]

    def test_diag_1_4(self):
        sm = successive_minima(GramMatrix([[1, 0], [0, 4]]))
        assert sm.norms == (1, 4)

    def test_example9_all_ones(self):
        sm = successive_minima(example9_gram())
        assert sm.norms == (1,) * 9

    @pytest.mark.parametrize("seed", range(6))
    def test_norms_invariant_under_basis_change(self, seed):
        rng = random.Random(seed + 77)
        n = rng.randint(2, 4)
        g = random_pd_gram(rng, n)
        t = random_unimodular(rng, n)
        assert successive_minima(g).norms == successive_minima(apply_transform(g, t)).norms

    def test_witnesses_independent_and_nondecreasing(self):
        rng = random.Random(5)
        for _ in range(5):
            n = rng.randint(2, 4)
            g = random_pd_gram(rng, n)
            sm = successive_minima(g)
            assert all(a <= b for a, b in zip(sm.norms, sm.norms[1:]))
            assert abs(int_determinant(sm.witnesses)) >= 1 or True
            from minkred.exactlin import int_matrix_rank
            assert int_matrix_rank(sm.witnesses) == n


class TestPrimitivity:
    def test_gcd_line(self):
        assert is_primitive_system([(2, 3)]) is True
        assert is_primitive_system([(2, 0)]) is False

    def test_example9_primitive_system(self):
        rows = [tuple(1 if j == i else 0 for j in range(9)) for i in range(7)]
        rows.append(E8_STAR_COORDS)
        assert is_primitive_system(rows) is True

    def test_dependent_raises(self):
        with pytest.raises(DependentVectorsError):
            is_primitive_system([(1, 2), (2, 4)])

    def test_complete_identity(self):
        assert complete_to_basis([(1, 0)], 2) == ((1, 0), (0, 1))

    def test_complete_2_3(self):
        c = complete_to_basis([(2, 3)], 2)
        assert (c[0][0], c[1][0]) == (2, 3)
        a, b = c[0][1], c[1][1]
        assert 2 * b - 3 * a in (1, -1)
        assert int_determinant(c) in (1, -1)

    def test_complete_example9(self):
        rows = [tuple(1 if j == i else 0 for j in range(9)) for i in range(7)]
        rows.append(E8_STAR_COORDS)
        c = complete_to_basis(rows, 9)
        assert int_determinant(c) in (1, -1)
        # the paper's ninth vector also completes this system
        cols = [tuple(1 if j == i else 0 for j in range(9)) for i in range(7)]
        cols.append(E8_STAR_COORDS)
        cols.append(E9_STAR_COORDS)
        t = tuple(tuple(cols[j][i] for j in range(9)) for i in range(9))
        assert int_determinant(t) in (1, -1)

    def test_prefixes_of_completion_are_primitive(self):
        rng = random.Random(11)
        for _ in range(10):
            n = rng.randint(2, 5)
            k = rng.randint(1, n - 1)
            while True:
                vs = [tuple(rng.randint(-4, 4) for _ in range(n)) for _ in range(k)]
                try:
                    if is_primitive_system(vs):
                        break
                except DependentVectorsError:
                    continue
            c = complete_to_basis(vs, n)
            for prefix in range(1, n + 1):
                cols = [tuple(c[i][j] for i in range(n)) for j in range(prefix)]
                assert is_primitive_system(cols)

    def test_not_primitive_rejected_by_completion(self):
        with pytest.raises(NotPrimitiveError):
            complete_to_basis([(2, 0)], 2)


class TestShortestPrimitiveExtension:
    def test_identity3_tiebreak(self):
        g = GramMatrix(identity_matrix(3))
        assert shortest_primitive_extension(g, [(1, 0, 0)]) == (0, 1, 0)

    def test_3_1_1_4(self):
        g = GramMatrix([[3, 1], [1, 4]])
        v = shortest_primitive_extension(g, [(1, 0)])
        assert v == (0, 1)
        assert evaluate_form(g, v) == 4

    def test_example9_extension_is_7_6(self):
        g = example9_gram()
        rows = [tuple(1 if j == i else 0 for j in range(9)) for i in range(7)]
        rows.append(E8_STAR_COORDS)
        v = shortest_primitive_extension(g, rows)
        assert evaluate_form(g, v) == F(7, 6)
        assert is_primitive_system(rows + [v])

    def test_full_system_rejected(self):
        g = GramMatrix(identity_matrix(2))
        with pytest.raises(DimensionMismatchError):
            shortest_primitive_extension(g, [(1, 0), (0, 1)])

    @pytest.mark.parametrize("seed", range(5))
    def test_extension_always_primitive_and_minimal(self, seed):
        rng = random.Random(seed + 300)
        n = rng.randint(2, 4)
        g = random_pd_gram(rng, n)
        k = rng.randint(1, n - 1)
        while True:
            vs = [tuple(rng.randint(-2, 2) for _ in range(n)) for _ in range(k)]
            try:
                if is_primitive_system(vs):
                    break
            except DependentVectorsError:
                continue
        v = shortest_primitive_extension(g, vs)
        assert is_primitive_system(vs + [v])
        # oracle: no shorter extension exists among all short vectors
        q = evaluate_form(g, v)
        for w, qw in brute_short_vectors(g.rows, q):
            if qw < q:
                try:
                    assert not is_primitive_system(vs + [w])
                except DependentVectorsError:
                    pass


class TestCosetMinima:
    @pytest.mark.parametrize("seed", range(8))
    def test_matches_brute_force(self, seed):
        rng = random.Random(seed + 500)
        n = rng.randint(2, 3)
        g = random_pd_gram(rng, n)
        parity = [rng.randint(0, 1) for _ in range(n)]
        if not any(parity):
            parity[0] = 1
        lam, reps = coset_minima(g, parity)
        # oracle needs a safe bound: norm of the 0/1 representative
        bound = evaluate_form(g, parity)
        blam, breps = brute_coset_minima(g.rows, parity, bound)
        assert lam == blam
        assert sorted(reps) == breps
