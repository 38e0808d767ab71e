import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from minkred.errors import (
    DependentVectorsError,
    DimensionMismatchError,
    NotSymmetricError,
    NotUnimodularError,
)
from minkred.exactlin import (
    EmbeddedBasis,
    GramMatrix,
    apply_transform,
    determinant,
    evaluate_form,
    first_nonpositive_pivot,
    gram_from_basis,
    identity_matrix,
    int_determinant,
    int_matrix_inverse,
    is_positive_definite,
    ldl_decompose,
    mat_mul,
    mat_transpose,
    smith_normal_form,
)
from minkred.corpus import example9_gram, example9_embedded

from _oracles import frac_det_gauss, minor_pivots, snf_divisors_via_minors, eval_q


F = Fraction


def recompose(L, D):
    n = len(D)
    return [
        [sum(L[i][k] * D[k] * L[j][k] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]


small_fracs = st.fractions(
    min_value=-5, max_value=5, max_denominator=6
)


def random_pd_gram(rng, n, spread=4):
    # A^T A + I is always PD
    a = [[rng.randint(-spread, spread) for _ in range(n)] for _ in range(n)]
    g = [
        [sum(a[k][i] * a[k][j] for k in range(n)) + (1 if i == j else 0) for j in range(n)]
        for i in range(n)
    ]
    return GramMatrix(g)


class TestLDL:
    def test_identity(self):
        L, D = ldl_decompose(GramMatrix(identity_matrix(2)))
        assert D == (1, 1)
        assert L == ((1, 0), (0, 1))

    def test_2x2_hand(self):
        # forced by hand expansion: d1 = 2, l21 = 1/2, d2 = 2 - 1/4*2 = 3/2
        L, D = ldl_decompose(GramMatrix([[2, 1], [1, 2]]))
        assert D == (2, F(3, 2))
        assert L[1][0] == F(1, 2)

    def test_example9_pivots_positive(self):
        g = example9_gram()
        L, D = ldl_decompose(g)
        assert len(D) == 9 and all(d > 0 for d in D)
        # cross-check pivots against the independent minor-ratio oracle
        assert list(D) == minor_pivots(g.rows)
        assert recompose(L, D) == [list(r) for r in g.rows]

    @settings(max_examples=60, deadline=None)
    @given(st.integers(2, 5), st.randoms(use_true_random=False))
    def test_recompose_random_pd(self, n, rng):
        g = random_pd_gram(rng, n)
        L, D = ldl_decompose(g)
        assert recompose(L, D) == [list(r) for r in g.rows]

    @settings(max_examples=60, deadline=None)
    @given(st.integers(2, 5), st.randoms(use_true_random=False))
    def test_pd_agrees_with_minors(self, n, rng):
        rows = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
        sym = [[rows[i][j] + rows[j][i] for j in range(n)] for i in range(n)]
        g = GramMatrix(sym)
        pivots = minor_pivots(sym)
        if pivots is None:
            # a leading minor vanished; the form is certainly not PD
            assert not is_positive_definite(g)
        else:
            assert is_positive_definite(g) == all(p > 0 for p in pivots)

    def test_first_bad_pivot_index(self):
        assert first_nonpositive_pivot(GramMatrix([[1, 0], [0, -1]])) == 1
        assert first_nonpositive_pivot(GramMatrix([[-1, 0], [0, 1]])) == 0
        assert first_nonpositive_pivot(GramMatrix([[2, 1], [1, 2]])) is None

    def test_not_symmetric_rejected(self):
        with pytest.raises(NotSymmetricError):
            GramMatrix([[1, 2], [3, 1]])


class TestEvaluateForm:
    def test_e8_star_is_unit(self):
        g = example9_gram()
        x = (-2, -1, -1, -1, -1, -1, -1, 2, 3)
        assert evaluate_form(g, x) == 1

    def test_e9_star_is_7_6(self):
        g = example9_gram()
        x = (-1, 0, 0, 0, 0, 0, 0, 1, 1)
        assert evaluate_form(g, x) == F(7, 6)
        assert eval_q(g.rows, x) == F(7, 6)

    def test_zero_vector(self):
        g = GramMatrix([[2, 1], [1, 2]])
        assert evaluate_form(g, (0, 0)) == 0

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            evaluate_form(GramMatrix([[1]]), (1, 2))

    @settings(max_examples=50, deadline=None)
    @given(st.integers(2, 4), st.randoms(use_true_random=False))
    def test_even_in_x(self, n, rng):
        g = random_pd_gram(rng, n)
        x = tuple(rng.randint(-6, 6) for _ in range(n))
        neg = tuple(-v for v in x)
        assert evaluate_form(g, x) == evaluate_form(g, neg) == eval_q(g.rows, x)


class TestDeterminant:
    def test_identity(self):
        assert determinant(identity_matrix(4)) == 1

    def test_diag(self):
        assert determinant([[2, 0], [0, 2]]) == 4

    def test_a2(self):
        assert determinant([[2, 1], [1, 2]]) == 3

    def test_rational_entries(self):
        m = [[F(1, 2), F(1, 3)], [F(1, 4), F(1, 5)]]
        assert determinant(m) == frac_det_gauss(m) == F(1, 10) - F(1, 12)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(2, 5), st.randoms(use_true_random=False))
    def test_matches_gauss_oracle(self, n, rng):
        m = [[F(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(n)] for _ in range(n)]
        assert determinant(m) == frac_det_gauss(m)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(2, 4), st.randoms(use_true_random=False))
    def test_invariant_under_unimodular(self, n, rng):
        g = random_pd_gram(rng, n)
        t = _random_unimodular(rng, n)
        assert determinant(apply_transform(g, t).rows) == determinant(g.rows)


def _random_unimodular(rng, n, ops=None, coeff=3):
    t = [list(r) for r in identity_matrix(n)]
    for _ in range(ops if ops is not None else 3 * n):
        i, j = rng.sample(range(n), 2)
        c = rng.randint(-coeff, coeff)
        for s in range(n):
            t[i][s] += c * t[j][s]
    return tuple(tuple(r) for r in t)


class TestSmith:
    def test_gcd_row(self):
        r = smith_normal_form([[2, 3]])
        assert r.divisors == (1,)
        d = mat_mul(mat_mul(r.left, [[2, 3]]), r.right)
        assert d == ((1, 0),)

    def test_diag2(self):
        r = smith_normal_form([[2, 0], [0, 2]])
        assert r.divisors == (2, 2)

    def test_primitive_system_example9(self):
        rows = [tuple(1 if j == i else 0 for j in range(9)) for i in range(7)]
        rows.append((-2, -1, -1, -1, -1, -1, -1, 2, 3))
        r = smith_normal_form(rows)
        assert r.divisors == (1,) * 8
        assert snf_divisors_via_minors(rows) == [1] * 8

    def test_transforms_and_inverses(self):
        m = [[12, 6, 4], [3, 9, 6], [2, 16, 14]]
        r = smith_normal_form(m)
        assert r.divisors == tuple(snf_divisors_via_minors(m))
        d = mat_mul(mat_mul(r.left, m), r.right)
        for i in range(3):
            for j in range(3):
                assert d[i][j] == (r.divisors[i] if i == j else 0)
        assert mat_mul(r.left, r.left_inv) == identity_matrix(3)
        assert mat_mul(r.right, r.right_inv) == identity_matrix(3)

    def test_zero_and_rank_deficient(self):
        assert smith_normal_form([[0, 0], [0, 0]]).divisors == (0, 0)
        assert smith_normal_form([[1, 2], [2, 4]]).divisors == (1, 0)

    @settings(max_examples=60, deadline=None)
    @given(
        st.integers(1, 4),
        st.integers(1, 4),
        st.randoms(use_true_random=False),
    )
    def test_matches_minor_oracle_and_chain(self, k, n, rng):
        m = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(k)]
        r = smith_normal_form(m)
        assert list(r.divisors) == snf_divisors_via_minors(m)
        for a, b in zip(r.divisors, r.divisors[1:]):
            if a != 0:
                assert b % a == 0
            else:
                assert b == 0
        d = mat_mul(mat_mul(r.left, m), r.right)
        for i in range(k):
            for j in range(n):
                assert d[i][j] == (r.divisors[i] if i == j and i < len(r.divisors) else 0)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(2, 3), st.randoms(use_true_random=False))
    def test_divisors_invariant_under_unimodular(self, n, rng):
        m = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        t = _random_unimodular(rng, n)
        left = mat_mul(t, m)
        right = mat_mul(m, t)
        base = smith_normal_form(m).divisors
        assert smith_normal_form(left).divisors == base
        assert smith_normal_form(right).divisors == base


class TestGramFromBasis:
    def test_orthonormal(self):
        b = EmbeddedBasis(identity_matrix(3))
        assert gram_from_basis(b).rows == GramMatrix(identity_matrix(3)).rows

    def test_eq1_reproduces_example9_form(self):
        g = gram_from_basis(example9_embedded())
        # the three coefficients the worked example hinges on
        assert g[0, 7] == F(1, 4)
        assert g[0, 8] == F(1, 2)
        assert g[7, 8] == F(-1, 6)
        assert all(g[i, i] == 1 for i in range(9))
        assert g == example9_gram()

    def test_column_scaling_bilinearity(self):
        b = EmbeddedBasis([[1, 0], [1, 1], [0, 2]])
        g = gram_from_basis(b)
        scaled = EmbeddedBasis([[2, 0], [2, 1], [0, 2]])
        g2 = gram_from_basis(scaled)
        assert g2[0, 0] == 4 * g[0, 0]

    def test_dependent_columns_rejected(self):
        with pytest.raises(DependentVectorsError):
            gram_from_basis(EmbeddedBasis([[1, 2], [2, 4], [0, 0]]))


class TestApplyTransform:
    def test_identity(self):
        g = GramMatrix([[2, 1], [1, 2]])
        assert apply_transform(g, identity_matrix(2)) == g

    def test_sign_flip(self):
        g = GramMatrix([[2, 1], [1, 3]])
        t = ((1, 0), (0, -1))
        out = apply_transform(g, t)
        assert out.rows == ((F(2), F(-1)), (F(-1), F(3)))

    def test_hand_example(self):
        # (e1, e2) -> (e1 - e2, e1)
        g = GramMatrix([[4, 3], [3, 5]])
        t = ((1, 1), (-1, 0))
        assert apply_transform(g, t).rows == ((F(3), F(1)), (F(1), F(4)))

    def test_rejects_non_unimodular(self):
        with pytest.raises(NotUnimodularError):
            apply_transform(GramMatrix([[1, 0], [0, 1]]), ((2, 0), (0, 1)))

    def test_int_inverse(self):
        rng = random.Random(7)
        for n in (2, 3, 4):
            t = _random_unimodular(rng, n)
            ti = int_matrix_inverse(t)
            assert mat_mul(t, ti) == identity_matrix(n)

    def test_int_determinant_matches_oracle(self):
        rng = random.Random(3)
        for _ in range(25):
            n = rng.randint(1, 5)
            m = [[rng.randint(-7, 7) for _ in range(n)] for _ in range(n)]
            assert int_determinant(m) == int(frac_det_gauss(m))
